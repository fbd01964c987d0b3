#include "blmhd/inequalities.hpp"
#include "blmhd/ops.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace blmhd;
using testing::grid;
using testing::simpson;

TEST_CASE("Hardy: zero field and a closed-form ratio") {
    const auto g = grid(8, 4096, 30.0, 2.0);
    const InequalityReport z = hardy_check(Field(g), 0.0);
    CHECK(z.lhs == 0.0);
    CHECK(z.ratio == 0.0);
    CHECK(z.passed);

    const Field f = Field::from_profile(g, [](double y) { return y * std::exp(-y); });
    const InequalityReport r = hardy_check(f, 0.0);
    // weight (1+y)^2 on the derivative side
    const double lhs = std::sqrt(simpson([](double y) { return y * y * std::exp(-2 * y); }, 0.0, 30.0));
    const double rhs = 2.0 * std::sqrt(simpson(
                                 [](double y) { return std::pow((1 + y) * (1 - y) * std::exp(-y), 2); }, 0.0, 30.0));
    CHECK(r.ratio == doctest::Approx(lhs / rhs).epsilon(1e-4));
    CHECK(r.ratio == doctest::Approx(0.2887).epsilon(1e-3));
    CHECK(r.passed);

    for (double lambda : {0.5, 1.0, 2.0}) CHECK(hardy_check(f, lambda).passed);
}

TEST_CASE("Hardy preconditions") {
    const auto g = grid(8, 256);
    const Field f = Field::from_profile(g, [](double y) { return y * std::exp(-y); });
    CHECK_THROWS_AS(hardy_check(f, -0.5), PreconditionError);
    CHECK_THROWS_AS(hardy_check(f, -1.0), PreconditionError);
    CHECK_THROWS_AS(hardy_check(Field::from_profile(g, [](double y) { return 1 - std::exp(-y); }), 0.0),
                    PreconditionError);
    CHECK_THROWS_AS(hardy_check(Field::from_profile(g, [](double y) { return std::exp(-y); }), 0.0),
                    PreconditionError);
}

TEST_CASE("Sobolev embedding ratios") {
    const auto g = grid(32, 1024);
    CHECK(sobolev_check(Field(g)).ratio == 0.0);
    const auto a = sobolev_check(Field::from_profile(g, [](double y) { return std::exp(-y); }));
    const auto b = sobolev_check(Field::from_function(g, [](double x, double y) { return std::exp(-y) * std::sin(x); }));
    CHECK(a.lhs == 1.0);
    // x-independent: rhs = sqrt(2 pi) (1/sqrt 2 + 1/sqrt 2)
    CHECK(a.rhs == doctest::Approx(2.0 * std::sqrt(std::numbers::pi)).epsilon(1e-3));
    CHECK(a.ratio <= 2.0);
    CHECK(b.ratio <= 2.0);
    CHECK(a.passed);
    CHECK(b.passed);
}

TEST_CASE("Moser product estimate") {
    const auto g = grid(16, 256);
    const Field f = Field::from_function(g, [](double x, double y) { return std::exp(-y) * std::sin(x); });
    const Field h = Field::from_function(g, [](double x, double y) { return y * std::exp(-y) * std::cos(x); });
    const Field zero(g);
    auto slice = [&](double t, const Field& a, const Field& b) {
        return MoserSlice{t, {a, zero, zero}, {b, zero, zero}};
    };
    const MoserSpec spec{MultiIndex{0, 1, 0}, MultiIndex{0, 0, 1}, 2, 0.0, 1.0};

    const auto z = moser_check({slice(0, zero, zero), slice(1, zero, zero)}, spec, 1.0);
    CHECK(z.lhs == 0.0);
    CHECK(z.passed);

    MoserSpec bad = spec;
    bad.gamma = MultiIndex{0, 0, 2};
    CHECK_THROWS(moser_check({slice(0, f, h), slice(1, f, h)}, bad, 1.0));

    // static factors: both sides grow linearly in the final time
    const auto r1 = moser_check({slice(0, f, h), slice(1, f, h)}, spec, 1.0);
    const auto r2 = moser_check({slice(0, f, h), slice(1, f, h), slice(2, f, h)}, spec, 1.0);
    CHECK(r1.lhs > 0.0);
    CHECK(r2.lhs == doctest::Approx(2.0 * r1.lhs).epsilon(1e-14));
    CHECK(r2.rhs == doctest::Approx(2.0 * r1.rhs).epsilon(1e-14));
    CHECK(r1.passed);
}

TEST_CASE("heat solver against closed forms") {
    SUBCASE("zero data") {
        HeatProblem p{"zero", 0.1, 30.0, 601, [](double) { return 0.0; }, {}, 1.0};
        const auto s = heat_solve(p, {0.5, 1.0});
        for (const auto& row : s.F)
            for (double v : row) CHECK(v == 0.0);
    }
    SUBCASE("odd Gaussian profile") {
        // x exp(-x^2) is odd, so the half-line solution is the whole-line one
        const double eps = 0.05, t = 1.0;
        HeatProblem p{"gauss", eps, 20.0, 4001, [](double x) { return x * std::exp(-x * x); }, {}, t};
        const auto s = heat_solve(p, {t});
        const double a = 1.0 + 4.0 * eps * t;
        double e = 0.0;
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            const double x = s.x[k];
            e = std::max(e, std::abs(s.F[0][k] - x * std::exp(-x * x / a) / std::pow(a, 1.5)));
        }
        CHECK(e < 1e-5);
        CHECK(s.F[0][0] == 0.0);
    }
    SUBCASE("maximum principle, with and without forcing") {
        HeatProblem p{"xe", 0.01, 30.0, 3001, [](double x) { return x * std::exp(-x); }, {}, 1.0};
        const auto s = heat_solve(p, {1.0});
        CHECK(s.F[0][0] == 0.0);
        double mx = 0.0;
        for (double v : s.F[0]) mx = std::max(mx, v);
        CHECK(mx <= std::exp(-1.0) + 1e-12);

        HeatProblem q{"forced", 0.01, 30.0, 3001, [](double) { return 0.0; },
                      [](double, double x) { return x * std::exp(-x); }, 1.0};
        const auto sq = heat_solve(q, {0.5, 1.0});
        for (std::size_t n = 0; n < sq.times.size(); ++n) {
            double m = 0.0;
            for (double v : sq.F[n]) m = std::max(m, v);
            CHECK(m <= sq.times[n] * std::exp(-1.0) + 1e-10);
            CHECK(m > 0.0);
        }
    }
}

TEST_CASE("heat bound: denominator and spread") {
    HeatProblem p{"xe", 0.01, 30.0, 3001, [](double x) { return x * std::exp(-x); }, {}, 1.0};
    const auto r = heat_bound_check(p, {1e-1, 1e-2, 1e-3, 1e-4}, 0.5);
    double xdx = 0.0;
    for (int k = 0; k <= 300000; ++k) {
        const double x = k * 1e-4;
        xdx = std::max(xdx, std::abs(x * (1 - x) * std::exp(-x)));
    }
    REQUIRE(r.denominator.size() == 4);
    CHECK(r.denominator[0] == doctest::Approx(std::exp(-1.0) + xdx).epsilon(1e-4));
    CHECK(xdx == doctest::Approx(0.309).epsilon(1e-2));  // at x = (3 + sqrt 5)/2
    CHECK(r.spread <= 4.0);
    CHECK(r.max_principle_excess <= 1e-10);
    CHECK(r.passed);
    CHECK(to_reports(r).size() == 4);
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
    const auto [x, w] = gauss_legendre(5, 0.0, 2.0);
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += w[k] * std::pow(x[k], 9);
    CHECK(s == doctest::Approx(102.4).epsilon(1e-13));
}
