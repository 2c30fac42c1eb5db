#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "andi/generators.hpp"
#include "andi/metrics.hpp"
#include "andi/rng.hpp"

using namespace andi;

TEST_CASE("mae") {
    CHECK(metrics::mae({1.0, 0.5}, {1.0, 0.5}) == doctest::Approx(0.0));
    CHECK(metrics::mae({1.0, 1.0}, {0.8, 1.4}) == doctest::Approx(0.3));
    CHECK_THROWS_AS(metrics::mae({1.0}, {1.0, 2.0}), shape_error);
    CHECK_THROWS_AS(metrics::mae({}, {}), shape_error);

    SUBCASE("constant predictor vs the 39-value alpha grid") {
        std::vector<double> preds, gts;
        for (int i = 1; i <= 39; ++i) {
            gts.push_back(0.05 * i);
            preds.push_back(1.0);
        }
        // brute-force mean of |1 - alpha| over the grid
        double acc = 0.0;
        for (double g : gts) acc += std::fabs(1.0 - g);
        CHECK(metrics::mae(preds, gts) == doctest::Approx(acc / 39.0));
        CHECK(metrics::mae(preds, gts) == doctest::Approx(19.0 / 39.0).epsilon(1e-12));
    }

    SUBCASE("permutation invariance of pairs") {
        std::vector<double> preds = {0.1, 0.9, 1.4, 0.2}, gts = {0.2, 1.0, 1.0, 0.3};
        double base = metrics::mae(preds, gts);
        std::vector<std::size_t> perm = {2, 0, 3, 1};
        std::vector<double> p2, g2;
        for (auto i : perm) {
            p2.push_back(preds[i]);
            g2.push_back(gts[i]);
        }
        CHECK(metrics::mae(p2, g2) == doctest::Approx(base));
    }
}

TEST_CASE("f1_regression interval rule") {
    CHECK(metrics::f1_regression({1.0, 0.3}, {1.0, 0.3}) == doctest::Approx(1.0));
    // boundary inclusive
    CHECK(metrics::f1_regression({1.05}, {1.0}, 0.1) == doctest::Approx(1.0));
    CHECK(metrics::f1_regression({1.0, 1.2}, {1.04, 1.0}, 0.1) == doctest::Approx(0.5));
    CHECK_THROWS_AS(metrics::f1_regression({1.0}, {1.0}, 0.0), domain_error);

    SUBCASE("monotone non-decreasing in dalpha") {
        Rng rng(4);
        std::vector<double> preds, gts;
        for (int i = 0; i < 200; ++i) {
            gts.push_back(rng.uniform(0.0, 2.0));
            preds.push_back(gts.back() + rng.normal(0.0, 0.2));
        }
        double prev = 0.0;
        for (double da : {0.05, 0.1, 0.2, 0.4, 0.8}) {
            double f1 = metrics::f1_regression(preds, gts, da);
            CHECK(f1 >= prev);
            CHECK(f1 <= 1.0);
            prev = f1;
        }
    }
}

TEST_CASE("confusion matrix and classification f1") {
    SUBCASE("perfect predictions give a diagonal matrix, all f1 = 1") {
        std::vector<int> gt = {0, 1, 2, 3, 4, 0, 1};
        auto cm = metrics::confusion_matrix(gt, gt);
        auto f1 = metrics::f1_classification(cm);
        for (int c = 0; c < 5; ++c) {
            CHECK(cm[c][c] > 0);
            CHECK(f1.per_class[c] == doctest::Approx(1.0));
        }
        CHECK(f1.micro == doctest::Approx(1.0));
    }

    SUBCASE("all predicted FBM gives a single nonzero column") {
        std::vector<int> gt = {0, 1, 2, 3, 4}, pred(5, 2);
        auto cm = metrics::confusion_matrix(pred, gt);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                CHECK(cm[i][j] == ((j == 2) ? 1 : 0));
    }

    SUBCASE("marginals: row sums equal ground-truth counts, trace/N = micro") {
        Rng rng(8);
        std::vector<int> gt, pred;
        std::array<std::int64_t, 5> gt_counts{};
        for (int i = 0; i < 5000; ++i) {
            gt.push_back(static_cast<int>(rng.below(5)));
            pred.push_back(static_cast<int>(rng.below(5)));
            gt_counts[static_cast<std::size_t>(gt.back())]++;
        }
        auto cm = metrics::confusion_matrix(pred, gt);
        std::int64_t total = 0;
        for (std::size_t i = 0; i < 5; ++i) {
            std::int64_t row = 0;
            for (std::size_t j = 0; j < 5; ++j) row += cm[i][j];
            CHECK(row == gt_counts[i]);
            total += row;
        }
        CHECK(total == 5000);
        auto f1 = metrics::f1_classification(cm);
        std::int64_t trace = cm[0][0] + cm[1][1] + cm[2][2] + cm[3][3] + cm[4][4];
        CHECK(f1.micro == doctest::Approx(static_cast<double>(trace) / 5000.0));
        // uniform random predictions over balanced classes -> micro near 0.2
        CHECK(f1.micro == doctest::Approx(0.2).epsilon(0.15));
    }

    SUBCASE("hand-computed padded 2x2 case") {
        metrics::ConfusionMatrix cm{};
        cm[0][0] = 5;
        cm[0][1] = 5;
        cm[1][1] = 10;
        auto f1 = metrics::f1_classification(cm);
        CHECK(f1.per_class[0] == doctest::Approx(2.0 * 5 / (2.0 * 5 + 0 + 5)));
        CHECK(f1.per_class[0] == doctest::Approx(0.6667).epsilon(1e-3));
    }

    CHECK_THROWS_AS(metrics::confusion_matrix({5}, {0}), domain_error);
    CHECK_THROWS_AS(metrics::f1_classification(metrics::ConfusionMatrix{}), domain_error);
}

TEST_CASE("tamsd_alpha") {
    SUBCASE("straight line is ballistic") {
        std::vector<double> line(100);
        for (int i = 0; i < 100; ++i) line[static_cast<std::size_t>(i)] = i;
        CHECK(metrics::tamsd_alpha(line) == doctest::Approx(2.0).epsilon(1e-9));
    }

    SUBCASE("size and degeneracy errors") {
        CHECK_THROWS_AS(metrics::tamsd_alpha(std::vector<double>(11, 0.0)), size_error);
        CHECK_THROWS_AS(metrics::tamsd_alpha(std::vector<double>(50, 1.0)), degenerate_error);
    }

    SUBCASE("recovers alpha for Brownian and FBM ensembles") {
        for (double alpha : {0.4, 1.0}) {
            double acc = 0.0;
            const int n = 1000;
            for (int i = 0; i < n; ++i)
                acc += metrics::tamsd_alpha(
                    sim::gen_fbm(alpha, 1000, static_cast<std::uint64_t>(900 + i)));
            acc /= n;
            INFO("alpha=", alpha, " est=", acc);
            CHECK(std::fabs(acc - alpha) < 0.1);
        }
    }
}

TEST_CASE("eval report serialization") {
    metrics::EvalReport rep;
    rep.task = "classification";
    rep.total_n = 10;
    rep.overall_f1 = 0.8;
    rep.slices.push_back({"LW", "]100,200]", "", "2", "f1", 0.9, 4});
    auto j = rep.to_json();
    CHECK(j["task"] == "classification");
    CHECK(j["slices"].size() == 1);
    rep.write_csv("report_test.csv");
    std::ifstream in("report_test.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "model,length_bin,alpha_bin,snr,metric,value,n");
    std::remove("report_test.csv");
}
