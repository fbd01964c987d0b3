#include "blmhd/cancellation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace blmhd {

namespace {

double choose(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

/// Z^b of a jet: b.t_count time derivatives, then b.x_count x-derivatives.
Jet zj(const Jet& f, const MultiIndex& b) {
    Jet out = f;
    for (int k = 0; k < b.t_count; ++k) out = time_derivative(out);
    for (int k = 0; k < b.x_count; ++k) out = dx(out);
    return out;
}

Field zv(const Jet& f, const MultiIndex& b) { return zj(f, b).value(); }

/// All b <= a componentwise, b != 0, and b != a unless keep_full.
std::vector<MultiIndex> splits(const MultiIndex& a, bool keep_full) {
    std::vector<MultiIndex> out;
    for (int t = 0; t <= a.t_count; ++t)
        for (int x = 0; x <= a.x_count; ++x) {
            const MultiIndex b{t, x, 0};
            if (b.order() == 0) continue;
            if (!keep_full && b == a) continue;
            out.push_back(b);
        }
    return out;
}

MultiIndex minus(const MultiIndex& a, const MultiIndex& b) { return {a.t_count - b.t_count, a.x_count - b.x_count, 0}; }

/// sum_b C(a,b) Z^b p * Z^(a-b) q over the given splits.
Field leibniz(const MultiIndex& a, const std::vector<MultiIndex>& bs, const Jet& p, const Jet& q) {
    Field acc(p.grid_ptr());
    for (const auto& b : bs) acc += binomial(a, b) * (zv(p, b) * zv(q, minus(a, b)));
    return acc;
}

void check_alpha(const MultiIndex& a) {
    if (a.z2_count != 0) throw std::invalid_argument("good unknowns need a tangential multi-index");
    if (a.t_count < 0 || a.x_count < 0) throw std::invalid_argument("negative multi-index count");
}

double floor_or_default(const State& s, double f) { return f > 0.0 ? f : 0.5 * s.delta0; }

/// Jets of everything the three equations touch, at one state.
struct Work {
    MultiIndex a;
    SolutionJet sol;
    Jet U1, Rho, Hp1, eta_r, eta_u, eta_h;
    Jet Zpsi, rm, um, hm;
    Field bg;
};

Work prepare(const State& s, const MultiIndex& a, SolutionJet sol, double floor) {
    check_alpha(a);
    check_h_floor(s.h, floor);
    if (sol.rho.order() < a.t_count) throw MissingPdeContext("solution jet too short for " + a.label());
    Work w;
    w.a = a;
    w.sol = std::move(sol);
    w.bg = background(s.grid_ptr());
    const SolutionJet& q = w.sol;
    w.U1 = q.u + Jet(1.0 - w.bg);
    w.Rho = q.rho + 1.0;
    w.Hp1 = q.h + 1.0;
    w.eta_r = dy(q.rho) / w.Hp1;
    w.eta_u = (dy(q.u) + Jet(w.bg)) / w.Hp1;
    w.eta_h = dy(q.h) / w.Hp1;
    w.Zpsi = zj(q.psi, a);
    w.rm = zj(q.rho, a) - w.eta_r * w.Zpsi;
    w.um = zj(q.u, a) - w.eta_u * w.Zpsi;
    w.hm = zj(q.h, a) - w.eta_h * w.Zpsi;
    return w;
}

Field interior(Field f) {
    const int ny = f.ny();
    return zero_rows(zero_rows(std::move(f), 0, 0), ny - 1, ny - 1);
}

}  // namespace

void check_h_floor(const Field& h_shift, double floor) {
    if (!(floor > 0.0)) throw std::invalid_argument("h floor must be positive");
    double lo = std::numeric_limits<double>::infinity();
    for (double v : h_shift.values()) lo = std::min(lo, v + 1.0);
    if (!(lo >= floor))
        throw HFloorViolation("h + 1 drops to " + std::to_string(lo) + " below the floor " + std::to_string(floor));
}

double binomial(const MultiIndex& a, const MultiIndex& b) {
    return choose(a.t_count, b.t_count) * choose(a.x_count, b.x_count);
}

const char* equation_name(GoodEquation e) {
    switch (e) {
        case GoodEquation::rho_m: return "rho_m";
        case GoodEquation::u_m: return "u_m";
        case GoodEquation::h_m: return "h_m";
    }
    return "?";
}

GoodUnknowns good_unknowns(const State& s, const MultiIndex& alpha1, double delta_floor, const PdeContext& ctx) {
    check_alpha(alpha1);
    return good_unknowns(s, solution_jet(s, alpha1.t_count, ctx), alpha1, delta_floor);
}

GoodUnknowns good_unknowns(const State& s, const SolutionJet& jet, const MultiIndex& alpha1, double delta_floor) {
    const Work w = prepare(s, alpha1, jet, floor_or_default(s, delta_floor));
    GoodUnknowns g;
    g.alpha1 = alpha1;
    g.eta_rho = w.eta_r.value();
    g.eta_u = w.eta_u.value();
    g.eta_h = w.eta_h.value();
    g.rho_m = w.rm.value();
    g.u_m = w.um.value();
    g.h_m = w.hm.value();
    g.z_rho = zv(w.sol.rho, alpha1);
    g.z_u = zv(w.sol.u, alpha1);
    g.z_h = zv(w.sol.h, alpha1);
    g.z_psi = w.Zpsi.value();
    return g;
}

Field cancellation_residual(const State& s, const MultiIndex& a, GoodEquation which, const PdeContext& ctx,
                            SignConvention sign, double delta_floor) {
    if (a.t_count > 1) throw std::invalid_argument("residuals support at most one time derivative in the index");
    if (ctx.forcing && a.t_count > 0) throw std::invalid_argument("forced residuals need a spatial index");
    check_alpha(a);
    const Work w = prepare(s, a, solution_jet(s, a.t_count + 1, ctx), floor_or_default(s, delta_floor));
    const SolutionJet& q = w.sol;
    const GridPtr& grid = s.grid_ptr();
    const double eps = s.physics.eps, mu = s.physics.mu, kap = s.physics.kappa;
    const double sg = sign == SignConvention::corrected ? -1.0 : 1.0;

    const Field u1 = w.U1.value(), v = q.v.value(), g = q.g.value(), hp1 = w.Hp1.value(), rho = w.Rho.value();
    const Field zpsi = w.Zpsi.value();
    const Field zg = zv(q.g, a);
    const auto nz = splits(a, true);
    const auto mid = splits(a, false);

    // f_psi
    const Field fpsi = -leibniz(a, nz, w.U1, dx(q.psi)) - leibniz(a, mid, q.v, q.h);

    Field zdxrh(grid), zsrc(grid);
    if (ctx.sources && !ctx.sources->empty()) {
        const SourceTerms<Jet> r = assemble_source_jet(*ctx.sources, s.time, a.t_count);
        zdxrh = zv(dx(r.rh), a);
        switch (which) {
            case GoodEquation::rho_m: zsrc = zv(dx(r.r1) + dy(r.r2), a); break;
            case GoodEquation::u_m: zsrc = zv(dx(r.ru), a); break;
            case GoodEquation::h_m: zsrc = zdxrh; break;
        }
    }
    std::optional<Triple<Field>> F;
    if (ctx.forcing) {
        const Triple<Field> f = ctx.forcing->at(grid, s.time);
        F = Triple<Field>{zderiv_spatial(f.rho, a.x_count, 0), zderiv_spatial(f.u, a.x_count, 0),
                          zderiv_spatial(f.h, a.x_count, 0)};
    }

    Field lhs, rhs;
    switch (which) {
        case GoodEquation::h_m: {
            const Jet& X = w.hm;
            const Field hm = X.value(), zu = zv(q.u, a), eh = w.eta_h.value();
            const Field shear = dy(q.u.value()) + w.bg;
            lhs = X.derivative(1) + u1 * dx(hm) + v * dy(hm) - eps * dxx(hm) - kap * dyy(hm) - hp1 * dx(zu) -
                  g * dy(zu) - zg * shear;
            const Field fh = -leibniz(a, nz, w.U1, dx(q.h)) + leibniz(a, nz, w.Hp1, dx(q.u)) -
                             leibniz(a, mid, q.v, dy(q.h)) + leibniz(a, mid, q.g, dy(q.u));
            const Field Leta = w.eta_h.derivative(1) + u1 * dx(eh) + v * dy(eh) - eps * dxx(eh) - kap * dyy(eh);
            rhs = -eps * zsrc + eps * eh * cumint_y(zdxrh) + fh - eh * fpsi + 2.0 * eps * dx(eh) * dx(zpsi) +
                  2.0 * kap * dy(eh) * dy(zpsi) + sg * zpsi * Leta;
            if (F) rhs += F->h - eh * cumint_y(F->h);
            break;
        }
        case GoodEquation::rho_m: {
            const Jet& X = w.rm;
            const Field rm = X.value(), er = w.eta_r.value();
            lhs = X.derivative(1) + u1 * dx(rm) + v * dy(rm) - eps * dxx(rm) - eps * dyy(rm);
            const Field fr = -leibniz(a, nz, w.U1, dx(q.rho)) - leibniz(a, mid, q.v, dy(q.rho));
            const Field Leta = w.eta_r.derivative(1) + u1 * dx(er) + v * dy(er) - eps * dxx(er);
            rhs = fr - er * fpsi + 2.0 * eps * dx(er) * dx(zpsi) - kap * er * dyy(zpsi) + eps * dyy(er * zpsi) +
                  sg * zpsi * Leta - eps * zsrc + eps * er * cumint_y(zdxrh);
            if (F) rhs += F->rho - er * cumint_y(F->h);
            break;
        }
        case GoodEquation::u_m: {
            const Jet& X = w.um;
            const Field um = X.value(), zh = zv(q.h, a), eu = w.eta_u.value();
            lhs = rho * X.derivative(1) + rho * u1 * dx(um) + rho * v * dy(um) - eps * dxx(um) - mu * dyy(um) -
                  hp1 * dx(zh) - g * dy(zh) - zg * dy(q.h.value());
            const Jet shear = dy(q.u) + Jet(w.bg);
            const Field fu = -leibniz(a, nz, w.Rho, time_derivative(q.u)) - leibniz(a, nz, w.Rho * w.U1, dx(q.u)) +
                             leibniz(a, nz, w.Hp1, dx(q.h)) - leibniz(a, nz, w.Rho, q.v * shear) -
                             rho * leibniz(a, mid, q.v, dy(q.u)) + leibniz(a, mid, q.g, dy(q.h));
            const Field Leta = rho * w.eta_u.derivative(1) + rho * u1 * dx(eu) + rho * v * dy(eu);
            rhs = fu - rho * eu * fpsi - zpsi * Leta - eps * (rho - 1.0) * eu * dxx(zpsi) -
                  kap * rho * eu * dyy(zpsi) + 2.0 * eps * dx(eu) * dx(zpsi) + eps * dxx(eu) * zpsi +
                  mu * dyy(eu * zpsi) - eps * zsrc + eps * rho * eu * cumint_y(zdxrh);
            if (F) rhs += F->u - rho * eu * cumint_y(F->h);
            break;
        }
    }
    return interior(lhs - rhs);
}

CancellationSeries cancellation_residual(const Trajectory& traj, const MultiIndex& alpha1, GoodEquation which,
                                         SignConvention sign, double delta_floor) {
    CancellationSeries out;
    out.which = which;
    out.alpha1 = alpha1;
    const PdeContext ctx = traj.context();
    for (const State& s : traj.states) {
        Field r = cancellation_residual(s, alpha1, which, ctx, sign, delta_floor);
        out.times.push_back(s.time);
        out.sup.push_back(r.max_abs());
        out.residual.push_back(std::move(r));
    }
    return out;
}

std::vector<InequalityReport> norm_equivalence_check(const State& s, const MultiIndex& alpha1, double l, double delta,
                                                     const PdeContext& ctx, double tol, const std::string& subject) {
    if (!(l >= 1.0)) throw PreconditionError("norm equivalence needs l >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("norm equivalence needs delta in (0, 1)");
    const GoodUnknowns gu = good_unknowns(s, alpha1, delta, ctx);
    const Field hp1 = s.h + 1.0;
    const double k = 2.0 / (delta * (2.0 * l - 1.0));
    const double hm = weighted_l2(gu.h_m, l);
    const Field hy = dy(s.h);

    // The inequalities need Z^a psi to vanish far from the wall.
    double zmax = 0.0, ztop = 0.0;
    const int top = s.grid().ny() - 1;
    for (int i = 0; i < s.grid().nx(); ++i) {
        ztop = std::max(ztop, std::abs(gu.z_psi(i, top)));
        for (int j = 0; j <= top; ++j) zmax = std::max(zmax, std::abs(gu.z_psi(i, j)));
    }
    const bool decays = ztop <= 1e-3 * zmax;

    std::vector<InequalityReport> out;
    auto add = [&](const char* name, double lhs, double rhs) {
        InequalityReport r;
        r.inequality = name;
        r.subject = subject;
        r.lhs = lhs;
        r.rhs = rhs;
        r.tolerance = tol;
        r.metadata = {{"l", l}, {"delta", delta}, {"alpha_t", double(alpha1.t_count)},
                      {"alpha_x", double(alpha1.x_count)}};
        r.finish(1.0);
        r.hypotheses_met = decays;
        out.push_back(std::move(r));
    };

    add("b11", weighted_l2(gu.z_psi / hp1, l - 1.0), k * hm);
    add("b12", weighted_l2(gu.z_h, l), hm + k * weighted_linf(hy, 1.0) * hm);
    add("b13", weighted_l2(dx(gu.z_psi) / hp1, l - 1.0),
        k * weighted_l2(dx(gu.h_m), l) + 2.0 * k / delta * weighted_linf(dx(s.h), 0.0) * hm);
    const double cl = (2.0 * l + 1.0) / (2.0 * l - 1.0);
    add("b14", weighted_l2(dy(gu.z_h), l),
        weighted_l2(dy(gu.h_m), l) + cl / delta * (weighted_linf(hy, 0.0) + weighted_linf(z2(hy), 1.0)) * hm);

    const double lhs22 = weighted_l2_sq(gu.z_rho, l) + weighted_l2_sq(gu.z_u, l) + weighted_l2_sq(gu.z_h, l);
    const double ry = weighted_linf(dy(s.rho), 1.0);
    const double uy = weighted_linf(dy(s.u) + background(s.grid_ptr()), 1.0);
    const double grad = ry * ry + uy * uy + std::pow(weighted_linf(hy, 1.0), 2);
    const double cst = 2.0 * std::max(1.0, std::pow(2.0 / (2.0 * l - 1.0), 2)) / (delta * delta);
    const double mm = weighted_l2_sq(gu.rho_m, l) + weighted_l2_sq(gu.u_m, l) + weighted_l2_sq(gu.h_m, l);
    add("b22", lhs22, cst * (1.0 + grad) * mm);
    return out;
}

}  // namespace blmhd
