#include "blmhd/energy.hpp"

#include <algorithm>
#include <cmath>

namespace blmhd {

namespace {

using Stack = std::vector<Field>;

template <class Op>
Stack map_stack(const Stack& s, Op op) {
    Stack out;
    out.reserve(s.size());
    for (const auto& f : s) out.push_back(op(f));
    return out;
}

Field dx_(const Field& f) { return dx(f); }
Field dy_(const Field& f) { return dy(f); }

/// sum over the index set of ||d_y Z^a f||^2_{L^2_l}
double dy_after_sq(const Stack& s, const NormSpec& spec) {
    double acc = 0.0;
    for (const auto& a : index_set(spec)) acc += weighted_l2_sq(dy(zderiv(s, a)), spec.l);
    return acc;
}

/// v/phi with the wall row replaced by its limit d_y v = -d_x u.
Field v_over_phi(const Field& v, const Field& u) {
    const auto& phi = v.grid().phi();
    Field out = v;
    const Field ux = dx(u);
    for (int i = 0; i < v.nx(); ++i) {
        out(i, 0) = -ux(i, 0);
        for (int j = 1; j < v.ny(); ++j) out(i, j) = v(i, j) / phi[j];
    }
    return out;
}

Jet frozen_jet(const Field& f, int order) {
    std::vector<Field> c{f};
    for (int k = 0; k < order; ++k) c.emplace_back(f.grid_ptr());
    return Jet(std::move(c));
}

SolutionJet frozen_solution(const State& s, int order) {
    return SolutionJet{frozen_jet(s.rho, order), frozen_jet(s.u, order), frozen_jet(s.h, order),
                       frozen_jet(s.v, order),   frozen_jet(s.g, order), frozen_jet(s.psi, order)};
}

}  // namespace

EnergyReport instantaneous_functionals(const State& s, const EnergySpec& spec, const PdeContext& ctx) {
    if (spec.m < 1) throw std::invalid_argument("energy functionals need m >= 1");
    const int m = spec.m;
    const double l = spec.l;
    const double eps = s.physics.eps, mu = s.physics.mu, kap = s.physics.kappa;
    const SolutionJet jet = spec.frozen ? frozen_solution(s, m) : solution_jet(s, m, ctx);
    const Stack r = time_stack(jet, FieldId::rho), u = time_stack(jet, FieldId::u), h = time_stack(jet, FieldId::h);
    const Stack v = time_stack(jet, FieldId::v), g = time_stack(jet, FieldId::g);
    const std::vector<const Stack*> w{&r, &u, &h};
    const double coef[3] = {eps, mu, kap};

    const NormSpec capped{m, l, NormMode::tangential_capped};
    const NormSpec full{m, l, NormMode::full};
    const NormSpec lower{m - 1, l, NormMode::full};

    EnergyReport rep;
    rep.time = s.time;
    rep.monitor = monitor(s, spec.delta0, l);

    double hm_full = 0.0, dy_lower = 0.0, dx_capped = 0.0, dy_capped = 0.0, dx_full = 0.0, dyw_full = 0.0;
    double dxy_lower = 0.0, dyy_lower = 0.0;
    for (int k = 0; k < 3; ++k) {
        const Stack& f = *w[k];
        const Stack fy = map_stack(f, dy_);
        const Stack fx = map_stack(f, dx_);
        rep.E += conormal_norm_sq(f, capped);
        hm_full += conormal_norm_sq(f, full);
        dy_lower += conormal_norm_sq(fy, lower);
        dx_capped += conormal_norm_sq(fx, capped);
        dy_capped += coef[k] * dy_after_sq(f, capped);
        dx_full += conormal_norm_sq(fx, full);
        dyw_full += coef[k] * conormal_norm_sq(fy, full);
        dxy_lower += conormal_norm_sq(map_stack(fy, dx_), lower);
        dyy_lower += coef[k] * conormal_norm_sq(map_stack(f, [](const Field& q) { return dyy(q); }), lower);
    }
    const Stack ry = map_stack(r, dy_);
    const double ry_inf = conormal_linf_sq(ry, NormSpec{1, 1.0, NormMode::full});

    double good = 0.0, good_dx = 0.0, good_dy = 0.0;
    for (const auto& a : tangential_indices(m)) {
        const GoodUnknowns gu = good_unknowns(s, jet, a, 0.5 * spec.delta0);
        const Field* q[3] = {&gu.rho_m, &gu.u_m, &gu.h_m};
        for (int k = 0; k < 3; ++k) {
            good += weighted_l2_sq(*q[k], l);
            good_dx += weighted_l2_sq(dx(*q[k]), l);
            good_dy += coef[k] * weighted_l2_sq(dy(*q[k]), l);
        }
    }

    const NormSpec tan0{1, 0.0, NormMode::tangential_only};
    const NormSpec tan1{1, 1.0, NormMode::tangential_only};
    const NormSpec inf1{1, 1.0, NormMode::full};
    const double rt = weighted_linf(r[1], 0.0), rx = weighted_linf(dx(r[0]), 0.0);
    Stack vphi;
    for (std::size_t k = 0; k < v.size(); ++k) vphi.push_back(v_over_phi(v[k], u[k]));
    rep.Q = rt * rt + rx * rx + conormal_linf_sq(u, tan0) + conormal_linf_sq(h, tan0) + conormal_linf_sq(v, tan1) +
            conormal_linf_sq(g, tan1) + ry_inf + conormal_linf_sq(map_stack(u, dy_), inf1) +
            conormal_linf_sq(map_stack(h, dy_), inf1) + conormal_linf_sq(vphi, inf1);
    rep.Q_sup = rep.Q;

    rep.X = 1.0 + rep.E + good + dy_lower + ry_inf;
    rep.Y = 1.0 + hm_full + dy_lower + ry_inf;
    rep.Dx = eps * dx_capped + eps * good_dx;
    rep.Dy = dy_capped + good_dy;
    rep.theta_rate = eps * dx_full + dyw_full + eps * dxy_lower + dyy_lower;
    rep.xi_rate = dyy_lower + eps * dxy_lower + rep.Dx + rep.Dy;
    rep.Theta = rep.Y;
    rep.Xi = rep.X;
    return rep;
}

std::vector<EnergyReport> trajectory_report(const Trajectory& traj, const EnergySpec& spec) {
    std::vector<EnergyReport> out;
    const PdeContext ctx = traj.context();
    double sup_y = 0.0, sup_x = 0.0, sup_q = 0.0;
    for (const State& s : traj.states) {
        EnergyReport r;
        try {
            r = instantaneous_functionals(s, spec, ctx);
        } catch (const HFloorViolation&) {
            break;
        }
        sup_y = std::max(sup_y, r.Y);
        sup_x = std::max(sup_x, r.X);
        sup_q = std::max(sup_q, r.Q);
        if (!out.empty()) {
            const EnergyReport& p = out.back();
            const double dt = r.time - p.time;
            r.theta_int = p.theta_int + 0.5 * dt * (p.theta_rate + r.theta_rate);
            r.xi_int = p.xi_int + 0.5 * dt * (p.xi_rate + r.xi_rate);
        }
        r.Q_sup = sup_q;
        r.Theta = sup_y + r.theta_int;
        r.Xi = sup_x + r.xi_int;
        out.push_back(r);
    }
    return out;
}

const std::vector<std::string>& energy_columns() {
    static const std::vector<std::string> cols = {
        "time",  "E",      "Q",          "Q_sup",   "X",         "Y",       "Dx",       "Dy",
        "theta_rate", "xi_rate", "theta_int", "xi_int", "Theta", "Xi", "h_floor", "rho_sup", "shear_sup", "breached"};
    return cols;
}

std::vector<double> energy_row(const EnergyReport& r) {
    return {r.time,      r.E,      r.Q,       r.Q_sup,  r.X,     r.Y,          r.Dx,
            r.Dy,        r.theta_rate, r.xi_rate, r.theta_int, r.xi_int, r.Theta, r.Xi,
            r.monitor.h_floor, r.monitor.rho_sup, r.monitor.shear_sup, r.monitor.breached ? 1.0 : 0.0};
}

}  // namespace blmhd
