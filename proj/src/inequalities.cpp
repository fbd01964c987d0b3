#include "blmhd/inequalities.hpp"

#include <algorithm>
#include <cmath>

namespace blmhd {

void InequalityReport::finish(double bound) {
    if (rhs > 0.0)
        ratio = lhs / rhs;
    else
        ratio = (lhs > 0.0) ? std::numeric_limits<double>::infinity() : 0.0;
    passed = ratio <= bound + tolerance;
}

InequalityReport hardy_check(const Field& f, double lambda, double tol, const std::string& subject) {
    if (!(lambda > -0.5)) throw PreconditionError("hardy_check needs lambda > -1/2");
    const Grid& g = f.grid();
    const double scale = std::max(f.max_abs(), 1e-300);
    double wall = 0.0, top = 0.0;
    for (int i = 0; i < g.nx(); ++i) {
        wall = std::max(wall, std::abs(f(i, 0)));
        top = std::max(top, std::abs(f(i, g.ny() - 1)));
    }
    if (wall > 1e-12 * scale) throw PreconditionError("hardy_check needs f = 0 on the wall row");
    if (top > 1e-6 * scale) throw PreconditionError("hardy_check needs f to decay at y_max");

    InequalityReport r;
    r.inequality = "hardy";
    r.subject = subject;
    r.tolerance = tol;
    r.lhs = weighted_l2(f, lambda);
    r.rhs = 2.0 / (2.0 * lambda + 1.0) * weighted_l2(dy(f), lambda + 1.0);
    r.metadata = {{"lambda", lambda}, {"nx", g.nx()}, {"ny", g.ny()}};
    r.finish();
    return r;
}

InequalityReport sobolev_check(const Field& f, double c_star, const std::string& subject) {
    InequalityReport r;
    r.inequality = "sobolev";
    r.subject = subject;
    const Field fx = dx(f);
    r.lhs = f.max_abs();
    r.rhs = weighted_l2(f, 0.0) + weighted_l2(fx, 0.0) + weighted_l2(dy(f), 0.0) + weighted_l2(dy(fx), 0.0);
    r.metadata = {{"c_star", c_star}, {"nx", f.nx()}, {"ny", f.ny()}};
    r.finish(c_star);
    return r;
}

InequalityReport moser_check(const std::vector<MoserSlice>& series, const MoserSpec& spec, double c_star,
                             const std::string& subject) {
    const MultiIndex sum{spec.beta.t_count + spec.gamma.t_count, spec.beta.x_count + spec.gamma.x_count,
                         spec.beta.z2_count + spec.gamma.z2_count};
    if (sum.order() != spec.m) throw std::invalid_argument("moser_check needs |beta + gamma| = m");
    const double l = spec.l1 + spec.l2;
    const NormSpec hm{spec.m, spec.l2, NormMode::full};

    std::vector<double> prod, fh, gh;
    double f_inf = 0.0, g_inf = 0.0;
    for (const auto& s : series) {
        prod.push_back(weighted_l2_sq(zderiv(s.f, spec.beta) * zderiv(s.g, spec.gamma), l));
        fh.push_back(conormal_norm_sq(s.f, hm));
        gh.push_back(conormal_norm_sq(s.g, hm));
        f_inf = std::max(f_inf, weighted_linf(s.f.front(), spec.l1));
        g_inf = std::max(g_inf, weighted_linf(s.g.front(), spec.l1));
    }
    auto trap = [&](const std::vector<double>& v) {
        double acc = 0.0;
        for (std::size_t k = 1; k < v.size(); ++k) acc += 0.5 * (series[k].t - series[k - 1].t) * (v[k] + v[k - 1]);
        return acc;
    };
    InequalityReport r;
    r.inequality = "moser";
    r.subject = subject;
    r.lhs = trap(prod);
    r.rhs = f_inf * f_inf * trap(gh) + g_inf * g_inf * trap(fh);
    r.metadata = {{"m", spec.m}, {"l1", spec.l1}, {"l2", spec.l2}, {"c_star", c_star},
                  {"t", series.empty() ? 0.0 : series.back().t}};
    r.finish(c_star);
    return r;
}

}  // namespace blmhd
