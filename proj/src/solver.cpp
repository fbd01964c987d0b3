#include "blmhd/solver.hpp"

#include "blmhd/norms.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace blmhd {

void SolverConfig::validate() const {
    auto bad = [](const char* k) { throw std::invalid_argument(std::string("invalid ") + k); };
    if (!(physics.mu >= 0.0)) bad("physics.mu");
    if (!(physics.kappa >= 0.0)) bad("physics.kappa");
    if (!(physics.eps >= 0.0)) bad("physics.eps");
    if (!(dt > 0.0)) bad("solver.dt");
    if (!(t_end > 0.0)) bad("solver.t_end");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) bad("solver.cfl_safety");
    if (!(delta0 > 0.0)) bad("monitors.delta0");
    if (!(l >= 1.0)) bad("monitors.l");
    if (output_stride < 1) bad("solver.output_stride");
}

const char* scheme_name(Scheme s) { return s == Scheme::imex_be ? "imex-be" : "imex-cn"; }

MonitorStatus monitor(const State& s, double delta0, double l) {
    MonitorStatus m;
    m.time = s.time;
    const double delta = 0.5 * delta0;
    double hmin = std::numeric_limits<double>::infinity(), rmax = 0.0, rlo = 1e300, rhi = -1e300;
    for (std::size_t k = 0; k < s.h.size(); ++k) {
        hmin = std::min(hmin, s.h[k] + 1.0);
        rmax = std::max(rmax, std::abs(s.rho[k]));
        rlo = std::min(rlo, s.rho[k] + 1.0);
        rhi = std::max(rhi, s.rho[k] + 1.0);
    }
    Field shear = dy(s.u) + background(s.grid_ptr());
    m.h_floor = hmin;
    m.rho_sup = rmax;
    m.shear_sup = weighted_linf(shear, 1.0);
    m.rho_band_ok = rlo >= 0.5 && rhi <= 1.5;
    std::string why;
    auto add = [&](const char* r) { why += why.empty() ? r : std::string(",") + r; };
    if (!(m.h_floor >= delta)) add("h_floor");
    if (!(m.rho_sup <= (2.0 * l - 1.0) * delta * delta / 2.0)) add("rho_sup");
    if (!(m.shear_sup <= 1.0 / delta)) add("shear_sup");
    m.breached = !why.empty();
    m.reason = why;
    return m;
}

double cfl_limit(const State& s, double cfl_safety) {
    const Grid& g = s.grid();
    const auto& y = g.y();
    const int ny = g.ny();
    std::vector<double> dyj(ny);
    for (int j = 0; j < ny; ++j) {
        const double a = j > 0 ? y[j] - y[j - 1] : 1e300;
        const double b = j + 1 < ny ? y[j + 1] - y[j] : 1e300;
        dyj[j] = std::min(a, b);
    }
    double rate = 0.0;
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < ny; ++j) {
            const double rho = std::max(s.rho(i, j) + 1.0, 1e-3);
            const double alfven = std::abs(s.h(i, j) + 1.0) / std::sqrt(rho);
            const double u1 = s.u(i, j) + 1.0 - std::exp(-y[j]);
            const double rx = (std::abs(u1) + alfven) / g.hx();
            const double ry = (std::abs(s.v(i, j)) + std::abs(s.g(i, j)) / std::sqrt(rho)) / dyj[j];
            rate = std::max(rate, rx + ry);
        }
    return rate > 0.0 ? cfl_safety / rate : std::numeric_limits<double>::infinity();
}

namespace {

enum class WallBc { neumann, dirichlet };

/// Coefficients of one implicit operator A = cx d_xx + cy d_yy (per point).
struct Implicit {
    Field cx, cy;
    WallBc wall;
    bool has_x;
};

Field apply(const Implicit& A, const Field& w) {
    const int ny = w.ny();
    Field out = A.wall == WallBc::neumann ? dyy_neumann(w) : zero_rows(dyy(w), 0, 0);
    out *= A.cy;
    if (A.has_x) out += A.cx * dxx(w);
    return zero_rows(std::move(out), ny - 1, ny - 1);
}

/// Periodic tridiagonal system a_i x_{i-1} + b_i x_i + c_i x_{i+1} = r_i (Sherman-Morrison).
void solve_periodic(std::vector<double>& a, std::vector<double>& b, std::vector<double>& c, std::vector<double>& r) {
    const int n = static_cast<int>(b.size());
    const double gamma = -b[0];
    std::vector<double> bb(b), u(n, 0.0);
    bb[0] = b[0] - gamma;
    bb[n - 1] = b[n - 1] - c[n - 1] * a[0] / gamma;
    u[0] = gamma;
    u[n - 1] = c[n - 1];
    auto thomas = [&](std::vector<double> d) {
        std::vector<double> cp(n), x(n);
        cp[0] = c[0] / bb[0];
        d[0] /= bb[0];
        for (int i = 1; i < n; ++i) {
            const double m = bb[i] - a[i] * cp[i - 1];
            cp[i] = c[i] / m;
            d[i] = (d[i] - a[i] * d[i - 1]) / m;
        }
        x[n - 1] = d[n - 1];
        for (int i = n - 2; i >= 0; --i) x[i] = d[i] - cp[i] * x[i + 1];
        return x;
    };
    const auto x = thomas(r);
    const auto z = thomas(u);
    const double fact = (x[0] + a[0] * x[n - 1] / gamma) / (1.0 + z[0] + a[0] * z[n - 1] / gamma);
    for (int i = 0; i < n; ++i) r[i] = x[i] - fact * z[i];
}

/// (I - theta A_x)^{-1} rhs, one periodic solve per y-row.
Field solve_x(const Implicit& A, double theta, Field rhs) {
    if (!A.has_x) return rhs;
    const Grid& g = rhs.grid();
    const int nx = g.nx(), ny = g.ny();
    const double ih2 = 1.0 / (g.hx() * g.hx());
    std::vector<double> a(nx), b(nx), c(nx), r(nx);
    for (int j = 0; j < ny; ++j) {
        bool any = false;
        for (int i = 0; i < nx; ++i) {
            const double k = theta * A.cx(i, j) * ih2;
            a[i] = -k;
            c[i] = -k;
            b[i] = 1.0 + 2.0 * k;
            r[i] = rhs(i, j);
            any = any || k != 0.0;
        }
        if (!any) continue;
        solve_periodic(a, b, c, r);
        for (int i = 0; i < nx; ++i) rhs(i, j) = r[i];
    }
    return rhs;
}

/// (I - theta A_y)^{-1} rhs, one Thomas solve per x-line.
Field solve_y(const Implicit& A, double theta, Field rhs) {
    const Grid& g = rhs.grid();
    const int nx = g.nx(), ny = g.ny();
    const auto& w = g.dyy_weights();
    const double y1 = g.y()[1];
    std::vector<double> a(ny), b(ny), c(ny), cp(ny);
    for (int i = 0; i < nx; ++i) {
        auto r = rhs.line(i);
        for (int j = 1; j < ny - 1; ++j) {
            const double k = theta * A.cy(i, j);
            a[j] = -k * w[j][0];
            b[j] = 1.0 - k * w[j][1];
            c[j] = -k * w[j][2];
        }
        if (A.wall == WallBc::neumann) {
            const double k = theta * A.cy(i, 0) * 2.0 / (y1 * y1);
            b[0] = 1.0 + k;
            c[0] = -k;
        } else {
            b[0] = 1.0;
            c[0] = 0.0;
        }
        a[0] = 0.0;
        a[ny - 1] = 0.0;
        b[ny - 1] = 1.0;
        c[ny - 1] = 0.0;
        cp[0] = c[0] / b[0];
        r[0] /= b[0];
        for (int j = 1; j < ny; ++j) {
            const double m = b[j] - a[j] * cp[j - 1];
            cp[j] = c[j] / m;
            r[j] = (r[j] - a[j] * r[j - 1]) / m;
        }
        for (int j = ny - 2; j >= 0; --j) r[j] -= cp[j] * r[j + 1];
    }
    return rhs;
}

Implicit op_rho(const GridPtr& g, const Physics& p) {
    return {Field(g, p.eps), Field(g, p.eps), WallBc::neumann, p.eps != 0.0};
}
Implicit op_h(const GridPtr& g, const Physics& p) {
    return {Field(g, p.eps), Field(g, p.kappa), WallBc::neumann, p.eps != 0.0};
}
Implicit op_u(const Field& rho_shift, const Physics& p) {
    const Field rho = rho_shift + 1.0;
    return {p.eps / rho, p.mu / rho, WallBc::dirichlet, p.eps != 0.0};
}

Triple<Field> explicit_part(const State& s, double t, const PdeContext& ctx) {
    std::optional<SourceTerms<Field>> src;
    if (ctx.sources && !ctx.sources->empty()) src = assemble_sources(*ctx.sources, t);
    std::optional<Triple<Field>> frc;
    if (ctx.forcing) frc = ctx.forcing->at(s.grid_ptr(), t);
    return tendency(Triple<Field>{s.rho, s.u, s.h}, s.physics, src ? &*src : nullptr, frc ? &*frc : nullptr,
                    TermSet::explicit_only);
}

Field factored_solve(const Implicit& A, double theta, Field rhs) { return solve_y(A, theta, solve_x(A, theta, std::move(rhs))); }

// Spalart-Moser-Rogers low-storage RK3 / Crank-Nicolson coefficients.
constexpr double kGamma[3] = {8.0 / 15.0, 5.0 / 12.0, 3.0 / 4.0};
constexpr double kZeta[3] = {0.0, -17.0 / 60.0, -5.0 / 12.0};
constexpr double kAlpha[3] = {29.0 / 96.0, -3.0 / 40.0, 1.0 / 6.0};
constexpr double kBeta[3] = {37.0 / 160.0, 5.0 / 24.0, 1.0 / 6.0};

}  // namespace

State advance(const State& s0, double dt, Scheme scheme, const PdeContext& ctx) {
    check_density(s0.rho);
    const GridPtr& g = s0.grid_ptr();
    const Physics& p = s0.physics;
    const Implicit Ar = op_rho(g, p), Ah = op_h(g, p);

    if (scheme == Scheme::imex_be) {
        const Triple<Field> N = explicit_part(s0, s0.time, ctx);
        State s = s0;
        s.rho = s0.rho + factored_solve(Ar, dt, dt * (apply(Ar, s0.rho) + N.rho));
        s.h = s0.h + factored_solve(Ah, dt, dt * (apply(Ah, s0.h) + N.h));
        check_density(s.rho);
        const Implicit Au = op_u(s.rho, p);
        s.u = s0.u + factored_solve(Au, dt, dt * (apply(Au, s0.u) + N.u));
        s.time = s0.time + dt;
        derive_secondary(s);
        return s;
    }

    State s = s0;
    const double c[3] = {0.0, 8.0 / 15.0, 2.0 / 3.0};
    std::optional<Triple<Field>> prev;
    for (int k = 0; k < 3; ++k) {
        const Triple<Field> N = explicit_part(s, s0.time + c[k] * dt, ctx);
        const double a = kAlpha[k], b = kBeta[k];
        auto stage_rhs = [&](const Field& Aw_old, const Field& Aw_new, const Field& n, const Field* np) {
            Field r = a * Aw_old + b * Aw_new;
            r += kGamma[k] * n;
            if (np) r += kZeta[k] * *np;
            return dt * r;
        };
        State next = s;
        {
            const Field Aw = apply(Ar, s.rho);
            next.rho = s.rho + factored_solve(Ar, b * dt, stage_rhs(Aw, Aw, N.rho, prev ? &prev->rho : nullptr));
        }
        {
            const Field Aw = apply(Ah, s.h);
            next.h = s.h + factored_solve(Ah, b * dt, stage_rhs(Aw, Aw, N.h, prev ? &prev->h : nullptr));
        }
        check_density(next.rho);
        {
            const Implicit Au_old = op_u(s.rho, p), Au_new = op_u(next.rho, p);
            next.u = s.u + factored_solve(Au_new, b * dt,
                                          stage_rhs(apply(Au_old, s.u), apply(Au_new, s.u), N.u, prev ? &prev->u : nullptr));
        }
        next.time = s0.time + c[k] * dt;
        derive_secondary(next);
        s = std::move(next);
        prev = N;
    }
    s.time = s0.time + dt;
    return s;
}

int substep_halvings(const State& s, const SolverConfig& cfg) {
    const double lim = cfl_limit(s, cfg.cfl_safety);
    int k = 0;
    while (cfg.dt / std::ldexp(1.0, k) > lim) {
        if (++k > cfg.max_halvings) throw SolverDivergence("time step collapsed below the CFL limit");
    }
    return k;
}

namespace {
bool finite(const State& s) { return s.rho.all_finite() && s.u.all_finite() && s.h.all_finite(); }

State step_counted(const State& s, const SolverConfig& cfg, const PdeContext& ctx, int* substeps) {
    const int k = substep_halvings(s, cfg);
    const int n = 1 << k;
    const double h = cfg.dt / n;
    State out = s;
    for (int q = 0; q < n; ++q) {
        out = advance(out, h, cfg.scheme, ctx);
        if (!finite(out)) throw SolverDivergence("non-finite values at t = " + std::to_string(out.time));
    }
    out.time = s.time + cfg.dt;
    if (substeps) *substeps += n;
    if (cfg.enforce_monitors) {
        MonitorStatus m = monitor(out, cfg.delta0, cfg.l);
        if (m.breached) throw MonitorBreach(m);
    }
    return out;
}
}  // namespace

State step(const State& s, const SolverConfig& cfg, const PdeContext& ctx) {
    return step_counted(s, cfg, ctx, nullptr);
}

Trajectory run(const State& initial, const SolverConfig& cfg, std::shared_ptr<const SourceBundle> sources,
               std::shared_ptr<const Forcing> forcing) {
    cfg.validate();
    Trajectory tr;
    tr.sources = std::move(sources);
    tr.forcing = std::move(forcing);
    const PdeContext ctx = tr.context();

    State s = initial;
    s.physics = cfg.physics;
    s.delta0 = cfg.delta0;
    derive_secondary(s);

    MonitorStatus m0 = monitor(s, cfg.delta0, cfg.l);
    tr.states.push_back(s);
    tr.monitors.push_back(m0);
    tr.monitor_history.push_back(m0);
    if (m0.breached && cfg.enforce_monitors) {
        tr.breached = true;
        tr.breach = m0;
        return tr;
    }
    const long nsteps = std::lround(std::ceil(cfg.t_end / cfg.dt - 1e-9));
    SolverConfig c = cfg;
    c.enforce_monitors = false;
    bool seen = m0.breached;
    for (long n = 1; n <= nsteps; ++n) {
        s = step_counted(s, c, ctx, &tr.substeps);
        s.time = n * cfg.dt;
        ++tr.steps;
        const MonitorStatus m = monitor(s, cfg.delta0, cfg.l);
        tr.monitor_history.push_back(m);
        if (m.breached && cfg.enforce_monitors) {
            tr.breached = true;
            tr.breach = m;
            break;
        }
        if (!m.breached && !seen) tr.unbreached_until = s.time;
        seen = seen || m.breached;
        if (n % cfg.output_stride == 0 || n == nsteps) {
            tr.states.push_back(s);
            tr.monitors.push_back(m);
        }
    }
    return tr;
}

}  // namespace blmhd
