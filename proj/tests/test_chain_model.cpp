#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

#include "ringspin/chain_model.hpp"

using namespace ringspin;

TEST_CASE("derive_nf for both parities") {
    CHECK(derive_nf(3) == 1);
    CHECK(derive_nf(4) == 2);
    CHECK(derive_nf(5) == 2);
    CHECK(derive_nf(70) == 35);
    CHECK(derive_nf(71) == 35);
    CHECK_THROWS_AS(derive_nf(2), ConfigError);
    CHECK_THROWS_AS(derive_nf(-5), ConfigError);
}

TEST_CASE("ChainSpec validates m") {
    const ChainSpec s(10, 3);
    CHECK(s.n() == 10);
    CHECK(s.m() == 3);
    CHECK(s.nf() == 5);
    CHECK(s.even());
    CHECK_FALSE(s.is_all_node());
    CHECK(ChainSpec::all_node(9).m() == 4);
    CHECK(ChainSpec::all_node(9).is_all_node());
    CHECK(s.with_m(5) == ChainSpec::all_node(10));
    CHECK_THROWS_AS(ChainSpec(10, 0), ConfigError);
    CHECK_THROWS_AS(ChainSpec(10, 6), ConfigError);
    CHECK_THROWS_AS(ChainSpec(9, 5), ConfigError);
    CHECK_THROWS_AS(ChainSpec(2, 1), ConfigError);
}

TEST_CASE("dipolar ratios") {
    const auto p6 = CouplingProfile::dipolar(6);
    REQUIRE(p6.size() == 3);
    CHECK(p6.ratio(1) == 1.0);
    CHECK(p6.ratio(2) == doctest::Approx(0.19245008972987526).epsilon(1e-15));
    CHECK(p6.ratio(3) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(p6.kind() == ProfileKind::dipolar);
    CHECK_THROWS_AS(p6.ratio(0), ConfigError);
    CHECK_THROWS_AS(p6.ratio(4), ConfigError);

    for (int n = 3; n <= 100; ++n) {
        const auto p = CouplingProfile::dipolar(n);
        REQUIRE(p.size() == derive_nf(n));
        CHECK(p.ratio(1) == 1.0);
        for (int k = 2; k <= p.size(); ++k) {
            CHECK(p.ratio(k) > 0.0);
            CHECK(p.ratio(k) < p.ratio(k - 1));
        }
    }
}

TEST_CASE("custom profiles") {
    const auto c = CouplingProfile::custom({1.0, 0.5, 0.25});
    CHECK(c.kind() == ProfileKind::custom);
    CHECK(c.ratio(3) == 0.25);
    CHECK_THROWS_AS(CouplingProfile::custom({}), ConfigError);
    CHECK_THROWS_AS(CouplingProfile::custom({0.9, 0.5}), ConfigError);
    CHECK_THROWS_AS(CouplingProfile::custom({1.0, std::numeric_limits<double>::quiet_NaN()}),
                    ConfigError);
}

TEST_CASE("profile file parsing") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto good = dir / "ringspin_profile_good.txt";
    {
        std::ofstream f(good);
        f << "# ratios for a test ring\n1\n\n0.5   # second\n  0.125\n";
    }
    const auto p = CouplingProfile::from_file(good.string());
    REQUIRE(p.size() == 3);
    CHECK(p.ratio(2) == 0.5);
    CHECK(p.ratio(3) == 0.125);

    const auto bad = dir / "ringspin_profile_bad.txt";
    {
        std::ofstream f(bad);
        f << "1\nhalf\n";
    }
    CHECK_THROWS_AS(CouplingProfile::from_file(bad.string()), ConfigError);
    CHECK_THROWS_AS(CouplingProfile::from_file((dir / "ringspin_missing_file.txt").string()),
                    ConfigError);
    std::filesystem::remove(good);
    std::filesystem::remove(bad);
}

TEST_CASE("ring distance") {
    CHECK(ring_distance(6, 1, 1) == 0);
    CHECK(ring_distance(6, 1, 2) == 1);
    CHECK(ring_distance(6, 1, 6) == 1);
    CHECK(ring_distance(6, 1, 4) == 3);
    CHECK(ring_distance(7, 2, 6) == 3);
}

TEST_CASE("generator examples") {
    const auto g = build_matrix(ChainSpec(4, 1), CouplingProfile::dipolar(4));
    Eigen::MatrixXd expected(4, 4);
    expected << 0, 1, 0, 1,
                1, 0, 1, 0,
                0, 1, 0, 1,
                1, 0, 1, 0;
    CHECK((g - expected).cwiseAbs().maxCoeff() == 0.0);

    const auto p6 = CouplingProfile::dipolar(6);
    const auto g6 = build_matrix(ChainSpec(6, 2), p6);
    CHECK(g6(0, 3) == 0.0);
    CHECK(g6(0, 2) == p6.ratio(2));
    CHECK(g6(0, 4) == p6.ratio(2));
    const auto g6f = build_matrix(ChainSpec(6, 3), p6);
    CHECK(g6f(0, 3) == doctest::Approx(0.125).epsilon(1e-15));

    CHECK_THROWS_AS(build_matrix(ChainSpec(10, 4), CouplingProfile::custom({1.0, 0.1})),
                    ConfigError);
}

TEST_CASE("generator properties over random rings") {
    std::mt19937 rng(20240601);
    std::uniform_int_distribution<int> pick_n(3, 60);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = pick_n(rng);
        const int m = std::uniform_int_distribution<int>(1, derive_nf(n))(rng);
        const auto profile = CouplingProfile::dipolar(n);
        const auto g = build_matrix(ChainSpec(n, m), profile);
        CAPTURE(n);
        CAPTURE(m);
        CHECK(g == g.transpose());
        CHECK(g.diagonal().cwiseAbs().maxCoeff() == 0.0);
        // circulant: each row is the previous one shifted by one site
        for (int j = 1; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                REQUIRE(g(j, k) == g(j - 1, (k - 1 + n) % n));
            }
        }
        double expected_row = 0.0;
        for (int k = 1; k <= m; ++k) {
            expected_row += (n % 2 == 0 && k == n / 2) ? profile.ratio(k) : 2.0 * profile.ratio(k);
        }
        CHECK(g.row(0).sum() == doctest::Approx(expected_row).epsilon(1e-14));
    }
}
