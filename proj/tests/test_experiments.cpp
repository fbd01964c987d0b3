#include "blmhd/corpus.hpp"
#include "blmhd/experiments.hpp"
#include "blmhd/ops.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace blmhd;
using testing::grid;

namespace {

SolverConfig short_run(double t_end = 0.1) {
    SolverConfig cfg;
    cfg.physics = Physics{1.0, 1.0, 0.05};
    cfg.dt = 0.01;
    cfg.t_end = t_end;
    cfg.output_stride = 5;
    return cfg;
}

}  // namespace

TEST_CASE("outer-flow matching relations") {
    SUBCASE("constant traces") {
        const OuterFlow f{constant_trace(1.0), constant_trace(1.0), constant_trace(1.0), {}};
        const auto r = matching_check(f, {0.0, 0.5, 1.0});
        REQUIRE(r.max_abs.size() == 3);
        for (double m : r.max_abs) CHECK(m == 0.0);
    }
    SUBCASE("x-dependent magnetic trace in pressure balance") {
        Trace H{[](double, double x) { return 1.0 + 0.1 * std::sin(x); }, [](double, double) { return 0.0; },
                [](double, double x) { return 0.1 * std::cos(x); }};
        const OuterFlow f{constant_trace(1.0), constant_trace(1.0), H,
                          [](double, double x) { return (1.0 + 0.1 * std::sin(x)) * 0.1 * std::cos(x); }};
        const auto r = matching_check(f, {0.0, 1.0}, 64);
        CHECK(r.max_abs[0] == 0.0);
        CHECK(r.max_abs[1] < 1e-15);
        // x = 0 is a node
        CHECK(r.max_abs[2] == doctest::Approx(0.1).epsilon(1e-14));
        CHECK(r.residual[2][1].size() == 64);
    }
    CHECK_THROWS(matching_check(OuterFlow{constant_trace(1), constant_trace(1), constant_trace(1), {}}, {0.0}, 0));
}

TEST_CASE("eps sweep bookkeeping") {
    const auto g = grid(16, 64);
    const State eq = make_state(Field(g), background(g), Field(g), Physics{});
    CHECK_THROWS_AS(eps_sweep(eq, short_run(), {0.05, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(eps_sweep(eq, short_run(), {}), std::invalid_argument);

    const SweepResult one = eps_sweep(eq, short_run(), {0.1});
    CHECK_FALSE(one.rates_computed);
    CHECK(one.pairwise_diffs.empty());

    // the outer state does not feel eps
    const SweepResult r = eps_sweep(eq, short_run(), {0.1, 0.05, 0.025}, 2);
    REQUIRE(r.sup_diffs.size() == 2);
    for (double d : r.sup_diffs) CHECK(d <= 1e-8);
    CHECK(r.times.size() == 3);
    for (bool v : r.valid) CHECK(v);
}

TEST_CASE("eps sweep on smooth data is deterministic across thread counts") {
    const auto g = grid(16, 64);
    const State s = state_from_physical(g, preset("smooth", 0.1), Physics{});
    const SweepResult a = eps_sweep(s, short_run(), {0.1, 0.05, 0.025}, 1);
    const SweepResult b = eps_sweep(s, short_run(), {0.1, 0.05, 0.025}, 3);
    REQUIRE(a.sup_diffs.size() == 2);
    CHECK(a.sup_diffs == b.sup_diffs);
    CHECK(a.rates_computed);
    CHECK(a.rates[0] == doctest::Approx(a.sup_diffs[1] / a.sup_diffs[0]));
    CHECK(a.cauchy_decreasing());
}

TEST_CASE("difference good unknowns") {
    const auto g = grid(32, 128);
    const State s1 = state_from_physical(g, preset("smooth", 0.1), Physics{});
    SUBCASE("identical states") {
        const auto d = diff_good_unknowns(s1, s1, 0.125);
        CHECK(d.norm_sq == 0.0);
        CHECK(d.phi_bar.max_abs() == 0.0);
    }
    SUBCASE("equal magnetic fields leave the raw differences") {
        State s2 = s1;
        s2.rho = s2.rho + Field::from_function(g, [](double x, double y) { return 1e-3 * std::exp(-y * y) * std::cos(x); });
        const auto d = diff_good_unknowns(s1, s2, 0.125);
        CHECK(d.phi_bar.max_abs() == 0.0);
        CHECK((d.rho_i - d.rho_bar).max_abs() == 0.0);
        CHECK((d.u_i - d.u_bar).max_abs() == 0.0);
    }
    SUBCASE("reconstruction") {
        State s2 = state_from_physical(g, preset("smooth", 0.12), Physics{});
        const auto d = diff_good_unknowns(s1, s2, 0.125);
        CHECK(d.phi_bar.max_abs() > 0.0);
        CHECK((d.rho_i + d.eta1 * d.phi_bar - d.rho_bar).max_abs() < 1e-15);
        CHECK((d.h_i + d.eta3 * d.phi_bar - d.h_bar).max_abs() < 1e-15);
    }
}

TEST_CASE("stability pair") {
    const auto g = grid(16, 64);
    const State s1 = state_from_physical(g, preset("smooth", 0.1), Physics{});
    const StabilityResult same = stability_pair(s1, s1, short_run());
    CHECK(same.max_raw_diff == 0.0);
    CHECK(same.max_norm == 0.0);

    State s2 = s1;
    s2.rho = s2.rho + Field::from_function(g, [](double x, double y) { return 1e-6 * std::exp(-y * y) * std::cos(x); });
    s2 = derived(s2);
    const StabilityResult r = stability_pair(s1, s2, short_run(), 2, 0.5, 2);
    CHECK(r.series.size() == 3);
    CHECK(r.max_norm > 0.0);
    // the initial difference alone is 1e-6 times its L2 norm, about 1.4e-6
    CHECK(r.max_norm <= 1e-5);
    CHECK(r.gronwall_c_min >= r.gronwall_c - 1e-12);
    CHECK(r.envelope_ok);
}
