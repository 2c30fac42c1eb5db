#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "andi/generators.hpp"
#include "andi/signal.hpp"

using namespace andi;

TEST_CASE("displacement_std hand cases") {
    CHECK(sig::displacement_std({0, 1, 2, 3}) == doctest::Approx(0.0));
    CHECK(sig::displacement_std({0, 1, 0, 1}) == doctest::Approx(std::sqrt(8.0 / 9.0)));
    CHECK(sig::displacement_std({5, 5, 5, 5}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(sig::displacement_std({1.0}), domain_error);
}

TEST_CASE("add_noise scales with sigma_D / snr") {
    auto traj = sim::gen_fbm(1.0, 200, 3);
    double sigma_d = sig::displacement_std(traj);

    SUBCASE("huge snr leaves trajectory nearly untouched") {
        auto noisy = sig::add_noise(traj, 1e6, 1);
        for (std::size_t i = 0; i < noisy.positions.size(); ++i)
            CHECK(std::fabs(noisy.positions[i] - traj.positions[i]) < 1e-5 * sigma_d);
    }

    SUBCASE("per-frame noise std matches sigma_D / snr over many draws") {
        for (double snr : {1.0, 2.0}) {
            const int reps = 10000;
            double acc = 0.0;
            std::size_t frame = 50;
            std::vector<double> sq;
            for (int r = 0; r < reps; ++r) {
                auto noisy = sig::add_noise(traj, snr, static_cast<std::uint64_t>(r));
                double d = noisy.positions[frame] - traj.positions[frame];
                sq.push_back(d * d);
            }
            double mean = 0.0;
            for (double v : sq) mean += v;
            mean /= reps;
            double var_of_sq = 0.0;
            for (double v : sq) var_of_sq += (v - mean) * (v - mean);
            var_of_sq /= (reps - 1);
            double se = std::sqrt(var_of_sq / reps);
            double expect = (sigma_d / snr) * (sigma_d / snr);
            INFO("snr=", snr, " mean=", mean, " expect=", expect);
            CHECK(std::fabs(mean - expect) < 3.0 * se);
        }
    }

    SUBCASE("deterministic for fixed seed, length preserved") {
        auto a = sig::add_noise(traj, 2.0, 99);
        auto b = sig::add_noise(traj, 2.0, 99);
        CHECK(a.positions == b.positions);
        CHECK(a.positions.size() == traj.positions.size());
        CHECK(a.sigma_noise == doctest::Approx(sigma_d / 2.0));
    }

    SUBCASE("degenerate input rejected") {
        sim::Trajectory flat;
        flat.positions = {0, 1, 2, 3};
        CHECK_THROWS_AS(sig::add_noise(flat, 1.0, 0), degenerate_error);
        CHECK_THROWS_AS(sig::add_noise(traj, 0.0, 0), domain_error);
    }
}

TEST_CASE("normalize") {
    CHECK(sig::normalize({5, 6, 7, 8}) == std::vector<double>{0, 1, 2, 3});
    CHECK(sig::normalize({0, 2, 4, 6}) == std::vector<double>{0, 1, 2, 3});
    CHECK(sig::normalize({3, 3, 3}) == std::vector<double>{0, 0, 0});

    SUBCASE("unit displacement std and idempotence") {
        auto traj = sim::gen_sbm(1.3, 300, 17);
        auto norm = sig::normalize(traj.positions);
        CHECK(norm[0] == 0.0);
        CHECK(sig::displacement_std(norm) == doctest::Approx(1.0));
        auto again = sig::normalize(norm);
        for (std::size_t i = 0; i < norm.size(); ++i)
            CHECK(again[i] == doctest::Approx(norm[i]).epsilon(1e-12));
    }

    SUBCASE("offset invariance") {
        auto traj = sim::gen_fbm(0.8, 100, 5);
        auto shifted = traj.positions;
        for (auto& x : shifted) x += 123.5;
        auto a = sig::normalize(traj.positions);
        auto b = sig::normalize(shifted);
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-9));
    }
}

TEST_CASE("lead_pad") {
    auto p = sig::lead_pad({1, 2}, 5);
    CHECK(p.values == std::vector<double>{0, 0, 0, 1, 2});
    CHECK(p.pad_len == 3);

    auto q = sig::lead_pad({1, 2, 3}, 3);
    CHECK(q.values == std::vector<double>{1, 2, 3});
    CHECK(q.pad_len == 0);

    CHECK_THROWS_AS(sig::lead_pad({}, 2), size_error);
    CHECK_THROWS_AS(sig::lead_pad({1, 2, 3, 4}, 3), size_error);

    SUBCASE("trailing values preserved bit-exactly") {
        auto traj = sim::gen_fbm(1.2, 137, 9);
        auto padded = sig::lead_pad(traj.positions, 1000);
        for (std::size_t i = 0; i < traj.positions.size(); ++i)
            CHECK(padded.values[863 + i] == traj.positions[i]);
    }
}
