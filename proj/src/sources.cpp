#include "blmhd/sources.hpp"

#include <cmath>

namespace blmhd {

SourceBundle bootstrap_time_derivatives(const State& initial, int m) {
    if (m < 0) throw std::invalid_argument("bootstrap depth must be >= 0");
    SourceBundle b;
    b.m = m;
    if (m == 0) return b;
    State s = initial;
    s.physics.eps = 0.0;
    const SolutionJet jet = solution_jet(s, m - 1, PdeContext{});
    for (int i = 0; i < m; ++i) {
        const Field r = jet.rho.derivative(i);
        b.dx_rho.push_back(dx(r));
        b.dy_rho.push_back(dy(r));
        b.dx_u1.push_back(dx(jet.u.derivative(i)));
        b.dx_h1.push_back(dx(jet.h.derivative(i)));
    }
    return b;
}

SourceBundle bootstrap_time_derivatives(const Field& rho0, const Field& u10, const Field& h10, int m,
                                        const Physics& physics) {
    Physics p = physics;
    p.eps = 0.0;
    return bootstrap_time_derivatives(state_from_physical(rho0, u10, h10, p), m);
}

namespace {
double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

/// Coefficient of s^k in sum_i (t+s)^i/i! c_i, i.e. sum_{i>=k} t^(i-k)/((i-k)! k!) c_i.
Field taylor_coeff(const std::vector<Field>& levels, double t, int k, const GridPtr& grid) {
    Field acc(grid);
    const int m = static_cast<int>(levels.size());
    for (int i = k; i < m; ++i) {
        const double w = std::pow(t, i - k) / (factorial(i - k) * factorial(k));
        axpy(w, levels[i], acc);
    }
    return acc;
}
}  // namespace

SourceTerms<Field> assemble_sources(const SourceBundle& b, double t) {
    if (t < 0.0) throw std::invalid_argument("source time must be >= 0");
    if (b.empty()) throw std::invalid_argument("empty source bundle");
    const GridPtr& g = b.dx_rho.front().grid_ptr();
    return {taylor_coeff(b.dx_rho, t, 0, g), taylor_coeff(b.dy_rho, t, 0, g), taylor_coeff(b.dx_u1, t, 0, g),
            taylor_coeff(b.dx_h1, t, 0, g)};
}

SourceTerms<Jet> assemble_source_jet(const SourceBundle& b, double t, int order) {
    if (b.empty()) throw std::invalid_argument("empty source bundle");
    const GridPtr& g = b.dx_rho.front().grid_ptr();
    SourceTerms<Jet> out{Jet(std::vector<Field>{}), Jet(std::vector<Field>{}), Jet(std::vector<Field>{}),
                         Jet(std::vector<Field>{})};
    for (int k = 0; k <= order; ++k) {
        out.r1.coeffs().push_back(taylor_coeff(b.dx_rho, t, k, g));
        out.r2.coeffs().push_back(taylor_coeff(b.dy_rho, t, k, g));
        out.ru.coeffs().push_back(taylor_coeff(b.dx_u1, t, k, g));
        out.rh.coeffs().push_back(taylor_coeff(b.dx_h1, t, k, g));
    }
    return out;
}

}  // namespace blmhd
