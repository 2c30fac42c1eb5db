#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "andi/fbm.hpp"
#include "andi/generators.hpp"
#include "andi/metrics.hpp"

using namespace andi;
using sim::ModelClass;

namespace {

std::vector<std::vector<double>> sample_paths(ModelClass model, double alpha, int length,
                                              int n_paths, std::uint64_t seed0) {
    std::vector<std::vector<double>> paths;
    paths.reserve(static_cast<std::size_t>(n_paths));
    for (int i = 0; i < n_paths; ++i)
        paths.push_back(sim::generate(model, alpha, length, seed0 + static_cast<std::uint64_t>(i))
                            .positions);
    return paths;
}

std::vector<double> increments(const std::vector<double>& pos) {
    std::vector<double> d(pos.size() - 1);
    for (std::size_t i = 0; i + 1 < pos.size(); ++i) d[i] = pos[i + 1] - pos[i];
    return d;
}

// Mean and standard error of per-path statistics.
struct MeanSe {
    double mean, se;
};

MeanSe mean_se(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - m) * (x - m);
    var /= static_cast<double>(v.size() - 1);
    return {m, std::sqrt(var / static_cast<double>(v.size()))};
}

// Empirical lag-k increment autocovariance, one value per path.
std::vector<double> per_path_autocov(const std::vector<std::vector<double>>& paths, int lag) {
    std::vector<double> out;
    for (const auto& p : paths) {
        auto d = increments(p);
        double acc = 0.0;
        std::size_t n = d.size() - static_cast<std::size_t>(lag);
        for (std::size_t i = 0; i < n; ++i) acc += d[i] * d[i + static_cast<std::size_t>(lag)];
        out.push_back(acc / static_cast<double>(n));
    }
    return out;
}

}  // namespace

TEST_CASE("fgn_covariance closed form") {
    CHECK(sim::fgn_covariance(0.5, 3) == doctest::Approx(0.0));
    CHECK(sim::fgn_covariance(0.25, 0) == doctest::Approx(1.0));
    CHECK(sim::fgn_covariance(0.9, 0) == doctest::Approx(1.0));
    CHECK(sim::fgn_covariance(0.75, 1) == doctest::Approx((std::pow(2.0, 1.5) - 2.0) / 2.0));
    CHECK(sim::fgn_covariance(0.75, 1) == doctest::Approx(0.41421).epsilon(1e-4));
    CHECK_THROWS_AS(sim::fgn_covariance(0.0, 1), domain_error);
    CHECK_THROWS_AS(sim::fgn_covariance(1.0, 1), domain_error);
    CHECK_THROWS_AS(sim::fgn_covariance(0.5, -1), domain_error);
}

TEST_CASE("generators are deterministic and origin-anchored") {
    for (int code = 0; code < 5; ++code) {
        auto model = sim::model_from_code(code);
        double alpha = model == ModelClass::LW ? 1.5 : 0.7;
        auto a = sim::generate(model, alpha, 250, 42);
        auto b = sim::generate(model, alpha, 250, 42);
        CHECK(a.positions == b.positions);
        CHECK(a.positions[0] == 0.0);
        CHECK(a.length() == 250);
        auto c = sim::generate(model, alpha, 250, 43);
        CHECK(a.positions != c.positions);
    }
}

TEST_CASE("dispatch validates per-model alpha ranges") {
    auto direct = sim::gen_fbm(1.0, 100, 7);
    auto routed = sim::generate(ModelClass::FBM, 1.0, 100, 7);
    CHECK(direct.positions == routed.positions);

    CHECK_THROWS_AS(sim::generate(ModelClass::LW, 0.5, 100, 1), range_error);
    CHECK_THROWS_AS(sim::generate(ModelClass::CTRW, 1.5, 100, 1), range_error);
    CHECK_THROWS_AS(sim::generate(ModelClass::ATTM, 1.2, 100, 1), range_error);
    CHECK_THROWS_AS(sim::generate(ModelClass::SBM, 2.5, 100, 1), range_error);
    CHECK_THROWS_AS(sim::gen_fbm(2.0, 100, 1), domain_error);
    CHECK_THROWS_AS(sim::gen_fbm(0.5, 1, 1), domain_error);
}

TEST_CASE("FBM at alpha=1 is Brownian: vanishing lag-1 autocovariance") {
    auto paths = sample_paths(ModelClass::FBM, 1.0, 1000, 4000, 100);
    auto cov1 = per_path_autocov(paths, 1);
    auto [m, se] = mean_se(cov1);
    CHECK(std::fabs(m) < 3.0 * se);
}

TEST_CASE("FBM increment autocovariance matches fGn closed form") {
    for (double hurst : {0.25, 0.5, 0.75}) {
        auto paths = sample_paths(ModelClass::FBM, 2.0 * hurst, 1000, 4000, 2000);
        for (int lag = 0; lag <= 5; ++lag) {
            auto cov = per_path_autocov(paths, lag);
            auto [m, se] = mean_se(cov);
            double expect = sim::fgn_covariance(hurst, lag);
            INFO("H=", hurst, " lag=", lag, " mean=", m, " expect=", expect, " se=", se);
            CHECK(std::fabs(m - expect) < 3.0 * se);
        }
    }
    // spec example: H=0.75 lag-1 about 0.4142
    auto paths = sample_paths(ModelClass::FBM, 1.5, 1000, 4000, 77);
    auto [m, se] = mean_se(per_path_autocov(paths, 1));
    CHECK(m == doctest::Approx(0.4142).epsilon(0.05));
}

TEST_CASE("SBM variance law Var[x(t)] = t^alpha") {
    for (double alpha : {0.5, 1.0, 2.0}) {
        auto paths = sample_paths(ModelClass::SBM, alpha, 1000, 6000, 300);
        for (int t : {10, 100, 500}) {
            std::vector<double> sq;
            for (const auto& p : paths)
                sq.push_back(p[static_cast<std::size_t>(t)] * p[static_cast<std::size_t>(t)]);
            auto [m, se] = mean_se(sq);
            double expect = std::pow(static_cast<double>(t), alpha);
            INFO("alpha=", alpha, " t=", t, " var=", m, " expect=", expect);
            CHECK(std::fabs(m - expect) < 3.0 * se);
        }
    }
}

TEST_CASE("SBM at alpha=1 has unit-variance iid increments") {
    auto paths = sample_paths(ModelClass::SBM, 1.0, 1000, 2000, 9);
    std::vector<double> var_per_path, lag1;
    for (const auto& p : paths) {
        auto d = increments(p);
        double v = 0.0;
        for (double x : d) v += x * x;
        var_per_path.push_back(v / static_cast<double>(d.size()));
    }
    auto [m, se] = mean_se(var_per_path);
    CHECK(std::fabs(m - 1.0) < 3.0 * se);
}

TEST_CASE("CTRW holds position between renewals") {
    auto traj = sim::gen_ctrw(0.3, 1000, 5);
    int plateaus = 0;
    for (int t = 0; t + 1 < traj.length(); ++t)
        if (traj.positions[static_cast<std::size_t>(t)] ==
            traj.positions[static_cast<std::size_t>(t) + 1])
            ++plateaus;
    CHECK(plateaus > 0);
}

TEST_CASE("LW ballistic limit and speed bound") {
    auto traj = sim::gen_lw(2.0, 100, 11);
    for (int t = 0; t < 100; ++t)
        CHECK(std::fabs(traj.positions[static_cast<std::size_t>(t)]) ==
              doctest::Approx(static_cast<double>(t)).epsilon(1e-12));

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto p = sim::gen_lw(1.3, 500, seed);
        for (int t = 0; t + 1 < 500; ++t)
            CHECK(std::fabs(p.positions[static_cast<std::size_t>(t) + 1] -
                            p.positions[static_cast<std::size_t>(t)]) <= 1.0 + 1e-12);
    }
}

TEST_CASE("ATTM at alpha=1 is unit Brownian") {
    auto paths = sample_paths(ModelClass::ATTM, 1.0, 1000, 2000, 21);
    std::vector<double> var_per_path;
    for (const auto& p : paths) {
        auto d = increments(p);
        double v = 0.0;
        for (double x : d) v += x * x;
        var_per_path.push_back(v / static_cast<double>(d.size()));
    }
    auto [m, se] = mean_se(var_per_path);
    CHECK(std::fabs(m - 1.0) < 3.0 * se);
}

TEST_CASE("ensemble MSD exponents recover alpha") {
    struct Case {
        ModelClass model;
        double alpha, tol;
    };
    const Case cases[] = {
        {ModelClass::FBM, 0.5, 0.15},  {ModelClass::FBM, 1.5, 0.15},
        {ModelClass::CTRW, 0.5, 0.15}, {ModelClass::CTRW, 1.0, 0.15},
        {ModelClass::SBM, 0.7, 0.15},  {ModelClass::LW, 1.5, 0.2},
        {ModelClass::ATTM, 0.5, 0.2},
    };
    for (const auto& c : cases) {
        auto paths = sample_paths(c.model, c.alpha, 1000, 3000, 5000);
        double slope = metrics::ensemble_msd_slope(paths);
        INFO(sim::model_name(c.model), " alpha=", c.alpha, " slope=", slope);
        CHECK(std::fabs(slope - c.alpha) < c.tol);
    }
}

TEST_CASE("Hosking fallback produces the right covariance too") {
    Rng rng(123);
    const int n = 200, reps = 3000;
    double lag1 = 0.0;
    for (int r = 0; r < reps; ++r) {
        auto fgn = sim::detail::fgn_hosking(0.75, n, rng);
        double acc = 0.0;
        for (int i = 0; i + 1 < n; ++i)
            acc += fgn[static_cast<std::size_t>(i)] * fgn[static_cast<std::size_t>(i) + 1];
        lag1 += acc / (n - 1);
    }
    lag1 /= reps;
    CHECK(lag1 == doctest::Approx(sim::fgn_covariance(0.75, 1)).epsilon(0.05));
}
