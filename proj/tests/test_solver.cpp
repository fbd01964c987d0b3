#include "blmhd/corpus.hpp"
#include "blmhd/manufactured.hpp"
#include "blmhd/ops.hpp"
#include "blmhd/solver.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <memory>

using namespace blmhd;
using testing::grid;

namespace {

State outer(const GridPtr& g, const Physics& p) { return make_state(Field(g), background(g), Field(g), p); }

double drift(const State& a, const State& b) {
    return std::max({(a.rho - b.rho).max_abs(), (a.u - b.u).max_abs(), (a.h - b.h).max_abs()});
}

double max_abs(const Triple<Field>& t, int skip = 1) {
    double e = 0.0;
    for (const Field* f : {&t.rho, &t.u, &t.h})
        for (int i = 0; i < f->nx(); ++i)
            for (int j = skip; j < f->ny() - skip; ++j) e = std::max(e, std::abs((*f)(i, j)));
    return e;
}

/// Neumann-violating density: d_y rho != 0 at the wall.
class WallSlope : public ManufacturedSolution {
public:
    MmsPoint eval(double, double x, double y) const override {
        MmsPoint q;
        q.r = 0.01 * y * std::exp(-y * y) * std::cos(x);
        q.ry = 0.01 * (1 - 2 * y * y) * std::exp(-y * y) * std::cos(x);
        q.u = std::exp(-y);
        q.uy = -std::exp(-y);
        q.uyy = std::exp(-y);
        return q;
    }
    std::string name() const override { return "wall_slope"; }
};

}  // namespace

TEST_CASE("outer state is a fixed point of both schemes") {
    const auto g = grid(16, 128);
    const Physics p{1.0, 1.0, 0.05};
    const State s = outer(g, p);
    for (Scheme sc : {Scheme::imex_be, Scheme::imex_cn}) {
        State w = s;
        for (int n = 0; n < 10; ++n) w = advance(w, 0.01, sc);
        CHECK(drift(w, s) < 1e-10);
    }
}

TEST_CASE("monitor thresholds") {
    const auto g = grid(16, 64);
    const Physics p{};
    // delta = 1/8: h + 1 >= 1/8, |rho| <= 3/128, shear <= 8
    CHECK_FALSE(monitor(outer(g, p), 0.25, 2.0).breached);

    State s = outer(g, p);
    s.h = Field(g, -0.9);
    auto m = monitor(s, 0.25, 2.0);
    CHECK(m.breached);
    CHECK(m.reason == "h_floor");
    CHECK(m.h_floor == doctest::Approx(0.1));

    s = outer(g, p);
    s.rho = Field(g, 0.0234);
    CHECK_FALSE(monitor(s, 0.25, 2.0).breached);
    s.rho = Field(g, 0.0235);
    m = monitor(s, 0.25, 2.0);
    CHECK(m.reason == "rho_sup");
    CHECK(m.rho_band_ok);

    s = outer(g, p);
    s.u = s.u + Field::from_profile(g, [](double y) { return 10.0 * y * std::exp(-y * y); });
    CHECK(monitor(s, 0.25, 2.0).reason == "shear_sup");
}

TEST_CASE("CFL halving is equivalent to manual substeps") {
    const auto g = grid(32, 96);
    const Physics p{1.0, 1.0, 0.01};
    const State s = state_from_physical(g, preset("smooth", 0.1), p);
    SolverConfig cfg;
    cfg.physics = p;
    cfg.dt = 0.5;
    cfg.enforce_monitors = false;
    const int k = substep_halvings(s, cfg);
    REQUIRE(k > 0);
    CHECK(cfg.dt / (1 << k) <= cfl_limit(s, cfg.cfl_safety));
    const State a = step(s, cfg);
    State b = s;
    for (int n = 0; n < (1 << k); ++n) b = advance(b, cfg.dt / (1 << k), cfg.scheme);
    CHECK(drift(a, b) == 0.0);
    // deterministic
    CHECK(drift(step(s, cfg), a) == 0.0);

    cfg.max_halvings = k - 1;
    CHECK_THROWS_AS(step(s, cfg), SolverDivergence);
}

TEST_CASE("discrete residual of manufactured solutions") {
    const Physics p{1.0, 1.0, 0.01};
    SUBCASE("equilibrium") {
        const auto g = grid(16, 128);
        CHECK(max_abs(pde_residual(g, EquilibriumManufactured{}, 0.3, p)) < 1e-10);
    }
    SUBCASE("gaussian converges at second order") {
        const GaussianManufactured ms(0.05, 0.3, 0.3);
        double prev = 0.0;
        for (int lev = 0; lev < 3; ++lev) {
            const auto g = grid(32 << lev, 64 << lev, 12.0, 1.0);
            const double e = max_abs(pde_residual(g, ms, 0.3, p));
            if (lev > 0) CHECK(prev / e > 3.0);
            prev = e;
        }
    }
    SUBCASE("affine in eps") {
        const GaussianManufactured ms(0.05, 0.3, 0.3);
        const auto g = grid(32, 64, 12.0, 1.0);
        Physics p0 = p, p1 = p, ph = p;
        p0.eps = 0.0;
        p1.eps = 1.0;
        ph.eps = 0.5;
        const auto r0 = pde_residual(g, ms, 0.2, p0);
        const auto r1 = pde_residual(g, ms, 0.2, p1);
        const auto rh = pde_residual(g, ms, 0.2, ph);
        const Triple<Field> mid{(r0.rho + r1.rho) * 0.5, (r0.u + r1.u) * 0.5, (r0.h + r1.h) * 0.5};
        CHECK(max_abs(Triple<Field>{rh.rho - mid.rho, rh.u - mid.u, rh.h - mid.h}, 0) < 1e-12);
    }
    SUBCASE("wall-incompatible fields are rejected") {
        CHECK_THROWS_AS(pde_residual(grid(16, 64), WallSlope{}, 0.0, p), PreconditionError);
    }
}

TEST_CASE("manufactured run tracks the exact solution") {
    const Physics p{1.0, 1.0, 0.01};
    auto ms = std::make_shared<GaussianManufactured>(0.05, 0.3, 0.3);
    const auto g = grid(32, 64, 12.0, 1.0);
    SolverConfig cfg;
    cfg.physics = p;
    cfg.dt = 0.01;
    cfg.t_end = 0.2;
    cfg.enforce_monitors = false;
    const auto tr = run(manufactured_state(g, *ms, 0.0, p), cfg, nullptr, std::make_shared<ManufacturedForcing>(ms, p));
    CHECK(tr.states.back().time == doctest::Approx(0.2));
    CHECK(manufactured_error(tr.states.back(), *ms) < 1e-3);
}

TEST_CASE("smooth data: floor, far field and bookkeeping") {
    const auto g = grid(32, 96);
    SolverConfig cfg;
    cfg.physics = Physics{1.0, 1.0, 0.05};
    cfg.dt = 0.01;
    cfg.t_end = 0.3;
    cfg.output_stride = 10;
    const State s0 = state_from_physical(g, preset("smooth", 0.1), cfg.physics);
    const auto tr = run(s0, cfg, std::make_shared<SourceBundle>(bootstrap_time_derivatives(s0, 2)));
    CHECK_FALSE(tr.breached);
    CHECK(tr.steps == 30);
    CHECK(tr.states.size() == 4);
    CHECK(tr.monitor_history.size() == 31);
    CHECK(tr.unbreached_until == doctest::Approx(0.3));
    for (const auto& m : tr.monitor_history) CHECK(m.h_floor >= 0.125);
    const State& last = tr.states.back();
    double far = 0.0;
    for (int i = 0; i < g->nx(); ++i)
        far = std::max({far, std::abs(last.rho(i, g->ny() - 1)), std::abs(last.h(i, g->ny() - 1)),
                        std::abs(last.u(i, g->ny() - 1) - std::exp(-g->y().back()))});
    CHECK(far <= 1e-8);
}

TEST_CASE("a breach stops an enforced run") {
    const auto g = grid(16, 64);
    SolverConfig cfg;
    State s = outer(g, Physics{});
    s.rho = Field::from_function(g, [](double x, double y) { return 0.1 * std::exp(-y * y) * std::cos(x); });
    const auto tr = run(s, cfg);
    CHECK(tr.breached);
    CHECK(tr.steps == 0);
    CHECK(tr.breach.reason.find("rho_sup") != std::string::npos);
}
