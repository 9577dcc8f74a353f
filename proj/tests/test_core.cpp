#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "test_helpers.hpp"
#include "varlp/duality.hpp"
#include "varlp/exponent_map.hpp"
#include "varlp/luxemburg.hpp"
#include "varlp/modular.hpp"

using namespace varlp;
using Catch::Approx;

TEST_CASE("exponent map validation computes bounds and flags constants") {
    ExponentMap m = validate_exponent_map({2.0, 2.0, 2.0});
    CHECK(m.p_minus == 2.0);
    CHECK(m.p_plus == 2.0);
    CHECK(m.constant);

    ExponentMap paper = validate_exponent_map({1.05, 1.25});
    CHECK(paper.p_minus == 1.05);
    CHECK(paper.p_plus == 1.25);
    CHECK_FALSE(paper.constant);
}

TEST_CASE("exponent map rejects the p = 1 boundary and bad values") {
    CHECK_THROWS_AS(validate_exponent_map({1.0, 2.0}), ExponentOutOfRange);
    CHECK_THROWS_AS(validate_exponent_map({1.005}), ExponentOutOfRange);
    CHECK_THROWS_AS(validate_exponent_map({0.5}), ExponentOutOfRange);
    CHECK_THROWS_AS(validate_exponent_map({std::nan("")}), ExponentOutOfRange);
    CHECK_THROWS_AS(validate_exponent_map({std::numeric_limits<double>::infinity()}),
                    ExponentOutOfRange);
    CHECK_THROWS_AS(validate_exponent_map({}), ExponentOutOfRange);
    CHECK_NOTHROW(validate_exponent_map({1.01, 3.0}));
}

TEST_CASE("modular functions on hand values") {
    ExponentMap p = validate_exponent_map({2.0, 3.0});
    CHECK(modular_rho(p, {1.0, 2.0}) == Approx(9.0));
    CHECK(modular_rho_bar(p, {1.0, 2.0}) == Approx(19.0 / 6.0));

    ExponentMap two = constant_exponents(2.0, 2);
    CHECK(modular_rho(two, {3.0, 4.0}) == Approx(25.0));
    CHECK(modular_rho_bar(two, {3.0, 4.0}) == Approx(12.5));

    CHECK(modular_rho(p, {0.0, 0.0}) == 0.0);
    CHECK(modular_rho_bar(p, {0.0, 0.0}) == 0.0);
    CHECK_THROWS_AS(modular_rho(p, {1.0}), DimensionMismatch);
    CHECK_THROWS_AS(modular_rho_bar(p, {1.0, 2.0, 3.0}), DimensionMismatch);
}

TEST_CASE("luxemburg norm: constant exponents reduce to the l^p norm") {
    ExponentMap two = constant_exponents(2.0, 2);
    CHECK(luxemburg_norm(two, {3.0, 4.0}) == Approx(5.0).epsilon(1e-12));
    CHECK(luxemburg_norm(two, {0.0, 0.0}) == 0.0);

    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        double p = 1.05 + 2.0 * rng.uniform();
        auto x = testutil::random_vector(12, rng);
        ExponentMap map = constant_exponents(p, x.size());
        double direct = 0.0;
        for (double v : x) direct += std::pow(std::fabs(v), p);
        direct = std::pow(direct, 1.0 / p);
        CHECK(luxemburg_norm(map, x) == Approx(direct).epsilon(1e-10));
    }
}

TEST_CASE("luxemburg norm of (1,1) under exponents (1.5, 3)") {
    // rho(x/l) = u + u^2 with u = (1/l)^{3/2}; the root of u + u^2 = 1
    // is u = (sqrt(5)-1)/2, so l = u^{-2/3}.
    double u = (std::sqrt(5.0) - 1.0) / 2.0;
    double expected = std::pow(u, -2.0 / 3.0);
    ExponentMap p = validate_exponent_map({1.5, 3.0});
    CHECK(luxemburg_norm(p, {1.0, 1.0}) == Approx(expected).epsilon(1e-10));
}

TEST_CASE("luxemburg norm is absolutely homogeneous and normalises the modular") {
    Rng rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 + rng.below(20);
        auto x = testutil::random_vector(n, rng);
        std::vector<double> exps(n);
        for (double& e : exps) e = 1.05 + 1.5 * rng.uniform();
        ExponentMap p = validate_exponent_map(exps);

        double norm = luxemburg_norm(p, x);
        REQUIRE(norm > 0.0);
        double alpha = 0.01 + 10.0 * rng.uniform();
        CHECK(luxemburg_norm(p, [&] {
                  auto s = x;
                  for (double& v : s) v *= alpha;
                  return s;
              }()) == Approx(alpha * norm).epsilon(1e-10));

        auto scaled = x;
        for (double& v : scaled) v /= norm;
        CHECK(modular_rho(p, scaled) == Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("duality map with constant exponent") {
    SECTION("p = r = 2 is the identity") {
        Signal x{0.3, -1.7, 2.0};
        DualElement d = duality_map_const(2.0, 2.0, x);
        for (std::size_t i = 0; i < x.size(); ++i) CHECK(d[i] == x[i]);
    }
    SECTION("p = r = 1.5 on (4, 0)") {
        DualElement d = duality_map_const(1.5, 1.5, {4.0, 0.0});
        CHECK(d[0] == Approx(2.0).epsilon(1e-14));
        CHECK(d[1] == 0.0);
    }
    SECTION("zero maps to zero") {
        DualElement d = duality_map_const(1.3, 2.0, {0.0, 0.0});
        CHECK(d == DualElement{0.0, 0.0});
    }
    SECTION("inverse pair round-trips through conjugate exponents") {
        Rng rng(7);
        for (int trial = 0; trial < 50; ++trial) {
            double p = 1.1 + 1.5 * rng.uniform();
            double r = 1.1 + 2.0 * rng.uniform();
            auto x = testutil::random_vector(9, rng);
            DualElement d = duality_map_const(p, r, x);
            Signal back = duality_map_const(conjugate_exponent(p), conjugate_exponent(r), d);
            CHECK(testutil::max_abs_diff(back, x) <= 1e-10 * (1.0 + max_abs(x)));
        }
    }
}

TEST_CASE("duality pairing identities of Definition-style maps") {
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        double p = 1.1 + 1.4 * rng.uniform();
        auto x = testutil::random_vector(10, rng);
        DualElement d = duality_map_const(p, p, x);
        double pc = conjugate_exponent(p);
        double norm_x = detail::lp_norm(p, x);
        double norm_d = detail::lp_norm(pc, d);
        CHECK(dot(d, x) == Approx(norm_x * norm_d).epsilon(1e-9));
        CHECK(norm_d == Approx(std::pow(norm_x, p - 1.0)).epsilon(1e-9));
    }
}

TEST_CASE("variable-exponent duality map") {
    SECTION("reduces to the constant-exponent formula") {
        Rng rng(9);
        for (int trial = 0; trial < 30; ++trial) {
            double p = 1.05 + 1.8 * rng.uniform();
            double r = 1.1 + 2.0 * rng.uniform();
            auto x = testutil::random_vector(8, rng);
            ExponentMap map = constant_exponents(p, x.size());
            DualElement varexp = duality_map_varexp(map, r, x);
            DualElement direct = duality_map_const(p, r, x);
            CHECK(testutil::max_abs_diff(varexp, direct) <= 1e-10 * (1.0 + max_abs(direct)));
        }
    }
    SECTION("zero maps to zero") {
        ExponentMap map = validate_exponent_map({1.5, 3.0});
        CHECK(duality_map_varexp(map, 2.0, {0.0, 0.0}) == DualElement{0.0, 0.0});
    }
    SECTION("matches a straight-line evaluation on (1,1), p = (1.5, 3), r = 2") {
        ExponentMap map = validate_exponent_map({1.5, 3.0});
        Signal x{1.0, 1.0};
        // norm from the closed-form root of u + u^2 = 1 (see above)
        double norm = std::pow((std::sqrt(5.0) - 1.0) / 2.0, -2.0 / 3.0);
        double denom = 1.5 / std::pow(norm, 1.5) + 3.0 / std::pow(norm, 3.0);
        double c0 = (1.5 / std::pow(norm, 1.5 - 2.0)) / denom;
        double c1 = (3.0 / std::pow(norm, 3.0 - 2.0)) / denom;
        DualElement d = duality_map_varexp(map, 2.0, x);
        CHECK(d[0] == Approx(c0).epsilon(1e-9));
        CHECK(d[1] == Approx(c1).epsilon(1e-9));
    }
}

TEST_CASE("modular derivatives on hand values") {
    ExponentMap p3 = validate_exponent_map({3.0});
    CHECK(j_rho(p3, {2.0})[0] == Approx(12.0));
    CHECK(j_rho_bar(p3, {2.0})[0] == Approx(4.0));
    CHECK(j_rho_bar_inverse(p3, {4.0})[0] == Approx(2.0));

    ExponentMap two = constant_exponents(2.0, 3);
    Signal x{0.5, -2.0, 1.25};
    DualElement jr = j_rho(two, x);
    DualElement jrb = j_rho_bar(two, x);
    Signal inv = j_rho_bar_inverse(two, x);
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(jr[i] == 2.0 * x[i]);
        CHECK(jrb[i] == x[i]);
        CHECK(inv[i] == x[i]);
    }

    CHECK(j_rho(p3, {0.0}) == DualElement{0.0});
    CHECK(j_rho_bar(p3, {0.0}) == DualElement{0.0});
}

TEST_CASE("modular derivatives match central finite differences") {
    Rng rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 6;
        std::vector<double> exps(n);
        for (double& e : exps) e = 1.1 + 0.9 * rng.uniform();
        ExponentMap p = validate_exponent_map(exps);
        auto x = testutil::random_vector(n, rng, 0.2, 2.0);
        for (std::size_t i = 0; i < n; ++i)
            if (rng.uniform() < 0.5) x[i] = -x[i];

        auto g_bar = testutil::fd_gradient(
            [&](const testutil::Vec& v) { return modular_rho_bar(p, v); }, x);
        auto g_rho = testutil::fd_gradient(
            [&](const testutil::Vec& v) { return modular_rho(p, v); }, x);
        CHECK(testutil::rel_diff(j_rho_bar(p, x), g_bar) < 1e-5);
        CHECK(testutil::rel_diff(j_rho(p, x), g_rho) < 1e-5);
    }
}

TEST_CASE("inverse modular map round-trips") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng.below(16);
        std::vector<double> exps(n);
        for (double& e : exps) e = 1.05 + 0.2 * rng.uniform();
        ExponentMap p = validate_exponent_map(exps);
        auto v = testutil::random_vector(n, rng);

        Signal x = j_rho_bar_inverse(p, v);
        DualElement v2 = j_rho_bar(p, x);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(v2[i] == Approx(v[i]).margin(1e-12).epsilon(1e-10));

        auto y = testutil::random_vector(n, rng);
        Signal y2 = j_rho_bar_inverse(p, j_rho_bar(p, y));
        for (std::size_t i = 0; i < n; ++i)
            CHECK(y2[i] == Approx(y[i]).margin(1e-12).epsilon(1e-10));
    }
}

TEST_CASE("inverse modular map signals overflow") {
    ExponentMap p = validate_exponent_map({1.01});
    // |v|^{1/0.01} = |v|^100 overflows for v = 1e10
    CHECK_THROWS_AS(j_rho_bar_inverse(p, {1e10}), OverflowError);
}

TEST_CASE("luxemburg norm odd cases") {
    SECTION("single entry equals its magnitude under any exponent") {
        for (double p : {1.05, 1.5, 2.0, 3.0}) {
            ExponentMap m = constant_exponents(p, 1);
            CHECK(luxemburg_norm(m, {-2.75}) == Approx(2.75).epsilon(1e-12));
        }
    }
    SECTION("wide dynamic range stays bracketed") {
        ExponentMap p = validate_exponent_map({1.05, 1.4, 1.9});
        Signal x{1e-8, 3e4, -2e4};
        double norm = luxemburg_norm(p, x);
        Signal scaled = x;
        for (double& v : scaled) v /= norm;
        CHECK(modular_rho(p, scaled) == Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("variable duality map checks lengths") {
    ExponentMap p = validate_exponent_map({1.5, 3.0});
    CHECK_THROWS_AS(duality_map_varexp(p, 2.0, {1.0, 2.0, 3.0}), DimensionMismatch);
}
