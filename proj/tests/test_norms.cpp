#include "blmhd/norms.hpp"
#include "blmhd/ops.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace blmhd;
using testing::grid;
using testing::simpson;
using testing::two_pi;

TEST_CASE("weighted L2 of e^{-y} against closed forms") {
    const double pi = std::numbers::pi;
    double prev0 = 0.0;
    for (int lev = 0; lev < 3; ++lev) {
        const auto g = grid(8, 512 << lev);
        const Field f = Field::from_profile(g, [](double y) { return std::exp(-y); });
        const double e0 = std::abs(weighted_l2(f, 0.0) - std::sqrt(pi));
        const double e1 = std::abs(weighted_l2(f, 1.0) - std::sqrt(two_pi * 1.25));
        CHECK(e1 < 1e-3 / (1 << (2 * lev)));
        if (lev > 0) CHECK(prev0 / e0 > 3.8);
        prev0 = e0;
    }
    CHECK(prev0 < 1e-5);
    CHECK(weighted_l2(Field(grid(8, 64)), 3.0) == 0.0);
}

TEST_CASE("weighted L-infinity") {
    const auto g = grid(8, 3001, 30.0, 0.0);
    CHECK(weighted_linf(Field(g, -2.5), 0.0) == 2.5);
    CHECK(weighted_linf(Field::from_profile(g, [](double y) { return std::exp(-y); }), 1.0) == 1.0);
    const double m = weighted_linf(Field::from_profile(g, [](double y) { return y * std::exp(-y); }), 0.0);
    CHECK(m == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));  // y = 1 is a node
}

TEST_CASE("conormal norm of a static profile") {
    const auto g = grid(8, 4096);
    const Field f = Field::from_profile(g, [](double y) { return std::exp(-y); });
    const double z2sq =
        two_pi * simpson([](double y) { return std::pow(testing::phi(y) * std::exp(-y), 2); }, 0.0, 30.0);
    const double oracle = std::sqrt(std::numbers::pi + z2sq);
    CHECK(conormal_norm_static(f, NormSpec{1, 0.0, NormMode::full}) == doctest::Approx(oracle).epsilon(1e-6));
    CHECK(conormal_norm_static(Field(g), NormSpec{2, 1.0, NormMode::full}) == 0.0);
    // a bare field has no time derivatives to offer
    CHECK_THROWS(conormal_norm(f, NormSpec{1, 0.0, NormMode::full}));

    // tangential derivatives of an x- and t-independent field vanish
    CHECK(conormal_norm_static(f, NormSpec{2, 1.5, NormMode::tangential_only}) ==
          doctest::Approx(weighted_l2(f, 1.5)).epsilon(1e-14));
}

TEST_CASE("norm properties: homogeneity, monotonicity, weight order") {
    const auto g = grid(32, 256);
    const Field f = Field::from_function(g, [](double x, double y) { return y * std::exp(-y) * (1 + 0.3 * std::sin(x)); });
    for (NormMode mode : {NormMode::full, NormMode::tangential_capped, NormMode::tangential_only}) {
        const NormSpec s{2, 1.0, mode};
        CHECK(conormal_norm_static(f * -3.0, s) == doctest::Approx(3.0 * conormal_norm_static(f, s)).epsilon(1e-13));
    }
    const double full = conormal_norm_static(f, {2, 1.0, NormMode::full});
    const double capped = conormal_norm_static(f, {2, 1.0, NormMode::tangential_capped});
    const double tan = conormal_norm_static(f, {2, 1.0, NormMode::tangential_only});
    CHECK(full >= capped);
    CHECK(capped >= tan);
    CHECK(conormal_norm_static(f, {3, 1.0, NormMode::full}) >= full);
    CHECK(weighted_l2(f, 2.0) >= weighted_l2(f, 1.0));
}

TEST_CASE("index sets") {
    CHECK(index_set(NormSpec{2, 0.0, NormMode::full}).size() == 10);
    // |a| <= 2 with at most one tangential derivative
    CHECK(index_set(NormSpec{2, 0.0, NormMode::tangential_capped}).size() == 7);
    CHECK(index_set(NormSpec{2, 0.0, NormMode::tangential_only}).size() == 6);
    CHECK(tangential_indices(2).size() == 3);
}

TEST_CASE("composite B norms") {
    const auto g = grid(16, 256);
    const Physics p{};
    SUBCASE("outer state") {
        const Field one(g, 1.0);
        const BNorms b = b_norms(one, one, one, 2, 1.0, p);
        CHECK(b.b_bar == 0.0);
        CHECK(b.b_hat == 0.0);
    }
    SUBCASE("magnetic bump bounds from below") {
        const Field one(g, 1.0);
        const Field bump = Field::from_profile(g, [](double y) { return std::exp(-y * y); });
        const BNorms b = b_norms(one, one, one + bump, 2, 1.0, p);
        CHECK(b.b_bar >= weighted_l2(bump, 1.0));
        // x-independent magnetic data leave every group of the second norm at rest
        CHECK(b.b_hat == 0.0);
    }
    SUBCASE("density profile, m = 1, l = 0") {
        const double a = 0.01;
        const Field rho = Field::from_profile(g, [a](double y) { return 1.0 + a * std::exp(-y); });
        const Field one(g, 1.0);
        const BNorms b = b_norms(rho, one, one, 1, 0.0, p);
        const double i1 = simpson([](double y) { return std::pow(testing::phi(y) * std::exp(-y), 2); }, 0.0, 30.0);
        const double lower = two_pi * a * a * (0.5 + i1 + 0.5) + a * a;
        CHECK(b.b_bar * b.b_bar >= lower * (1 - 1e-3));
    }
}
