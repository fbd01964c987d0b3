#include "blmhd/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace blmhd {

std::vector<double> HeatProblem::grid() const {
    if (n < 3 || !(x_max > 0.0)) throw std::invalid_argument("heat grid needs n >= 3 and x_max > 0");
    std::vector<double> x(n);
    const double h = x_max / (n - 1);
    for (int k = 0; k < n; ++k) x[k] = k * h;
    return x;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n, double a, double b) {
    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        x[i] = 0.5 * (a + b) - 0.5 * (b - a) * z;
        w[i] = (b - a) / ((1.0 - z * z) * dp * dp);
    }
    return {x, w};
}

namespace {

/// Odd extension on nodes -(n-1)..(n-1), stored with offset n-1.
std::vector<double> odd_extend(const std::vector<double>& f) {
    const int n = static_cast<int>(f.size());
    std::vector<double> e(2 * n - 1);
    for (int k = 0; k < n; ++k) {
        e[n - 1 + k] = f[k];
        e[n - 1 - k] = -f[k];
    }
    e[n - 1] = 0.0;
    return e;
}

struct Conv {
    std::vector<double> F, Fx;
};

/// Exact convolution of the piecewise-linear interpolant with a Gaussian of variance sigma^2.
Conv convolve(const std::vector<double>& f, double h, double sigma) {
    const int n = static_cast<int>(f.size());
    Conv out{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    const std::vector<double> e = odd_extend(f);
    const int ne = static_cast<int>(e.size());
    auto val = [&](int j) { return (j >= 0 && j < ne) ? e[j] : 0.0; };
    if (sigma == 0.0) {
        for (int i = 0; i < n; ++i) {
            out.F[i] = f[i];
            const double sl = (val(n - 1 + i) - val(n - 2 + i)) / h, sr = (val(n + i) - val(n - 1 + i)) / h;
            out.Fx[i] = 0.5 * (sl + sr);
        }
        out.F[0] = 0.0;
        return out;
    }
    const int W = static_cast<int>(std::ceil(10.0 * sigma / h)) + 1;
    std::vector<double> cdf(2 * W + 2), pdf(2 * W + 2);
    const double s2 = sigma * std::sqrt(2.0);
    const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
    for (int o = -W; o <= W + 1; ++o) {
        const double d = o * h;
        cdf[o + W] = 0.5 * std::erf(d / s2);
        pdf[o + W] = norm * std::exp(-0.5 * (d / sigma) * (d / sigma));
    }
    const double var = sigma * sigma;
    for (int i = 0; i < n; ++i) {
        const int c = n - 1 + i;
        double F = 0.0, Fx = 0.0;
        for (int o = -W; o <= W; ++o) {
            const int j = c + o;
            const double fj = val(j);
            const double sj = (val(j + 1) - fj) / h;
            if (fj == 0.0 && sj == 0.0) continue;
            const double P = cdf[o + W + 1] - cdf[o + W];
            F += (fj - sj * o * h) * P + sj * var * (pdf[o + W] - pdf[o + W + 1]);
            Fx += sj * P;
        }
        out.F[i] = F;
        out.Fx[i] = Fx;
    }
    out.F[0] = 0.0;
    return out;
}

std::vector<double> sample(const std::vector<double>& x, const std::function<double(double)>& f) {
    std::vector<double> v(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) v[k] = f(x[k]);
    return v;
}

double sup(const std::vector<double>& v) {
    double m = 0.0;
    for (double a : v) m = std::max(m, std::abs(a));
    return m;
}

/// sup |x d_x f| with centered differences (one-sided at the far end).
double sup_xdx(const std::vector<double>& x, const std::vector<double>& f) {
    const std::size_t n = f.size();
    const double h = x[1] - x[0];
    double m = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double d = (k + 1 < n) ? (f[k + 1] - f[k - 1]) / (2.0 * h) : (f[k] - f[k - 1]) / h;
        m = std::max(m, std::abs(x[k] * d));
    }
    return m;
}

}  // namespace

HeatSolution heat_solve(const HeatProblem& p, const std::vector<double>& times, int duhamel_nodes) {
    if (!(p.t_end > 0.0)) throw std::invalid_argument("heat problem needs t_end > 0");
    if (!(p.eps > 0.0)) throw std::invalid_argument("heat problem needs eps > 0");
    if (!p.f0) throw std::invalid_argument("heat problem needs f0");
    HeatSolution sol;
    sol.x = p.grid();
    const double h = sol.x[1] - sol.x[0];
    const auto f0 = sample(sol.x, p.f0);
    if (std::abs(f0[0]) > 1e-14 * std::max(1.0, sup(f0))) throw PreconditionError("heat problem needs f0(0) = 0");

    for (double t : times) {
        if (!(t > 0.0) || t > p.t_end * (1.0 + 1e-12)) throw std::invalid_argument("heat output time outside (0, t_end]");
        Conv c = convolve(f0, h, std::sqrt(2.0 * p.eps * t));
        if (p.g) {
            const auto [s, w] = gauss_legendre(duhamel_nodes, 0.0, t);
            for (int q = 0; q < duhamel_nodes; ++q) {
                const auto gq = sample(sol.x, [&](double x) { return p.g(s[q], x); });
                const Conv d = convolve(gq, h, std::sqrt(2.0 * p.eps * (t - s[q])));
                for (std::size_t k = 0; k < sol.x.size(); ++k) {
                    c.F[k] += w[q] * d.F[k];
                    c.Fx[k] += w[q] * d.Fx[k];
                }
            }
        }
        std::vector<double> xfx(sol.x.size());
        for (std::size_t k = 0; k < sol.x.size(); ++k) xfx[k] = sol.x[k] * c.Fx[k];
        sol.times.push_back(t);
        sol.F.push_back(std::move(c.F));
        sol.xFx.push_back(std::move(xfx));
    }
    return sol;
}

HeatBoundResult heat_bound_check(const HeatProblem& base, const std::vector<double>& eps_grid, double t,
                                 double max_spread, double c_star) {
    HeatBoundResult r;
    r.problem = base.name;
    r.t = t;
    const auto x = base.grid();
    const auto f0 = sample(x, base.f0);
    double data = sup(f0) + sup_xdx(x, f0);
    double g_sup_int = 0.0;
    if (base.g) {
        const auto [s, w] = gauss_legendre(24, 0.0, t);
        for (std::size_t q = 0; q < s.size(); ++q) {
            const auto gq = sample(x, [&](double xx) { return base.g(s[q], xx); });
            data += w[q] * (sup(gq) + sup_xdx(x, gq));
            g_sup_int += w[q] * sup(gq);
        }
    }
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double eps : eps_grid) {
        HeatProblem p = base;
        p.eps = eps;
        p.t_end = std::max(p.t_end, t);
        const HeatSolution sol = heat_solve(p, {t});
        const double num = sup(sol.xFx.front());
        const double ratio = data > 0.0 ? num / data : 0.0;
        r.eps.push_back(eps);
        r.numerator.push_back(num);
        r.denominator.push_back(data);
        r.ratio.push_back(ratio);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        r.max_principle_excess = std::max(r.max_principle_excess, sup(sol.F.front()) - (sup(f0) + g_sup_int));
    }
    r.spread = (hi == 0.0) ? 1.0 : hi / lo;
    r.passed = r.spread <= max_spread && hi <= c_star;
    return r;
}

std::vector<InequalityReport> to_reports(const HeatBoundResult& r) {
    std::vector<InequalityReport> out;
    for (std::size_t k = 0; k < r.eps.size(); ++k) {
        InequalityReport q;
        q.inequality = "heat_weighted_linf";
        q.subject = r.problem;
        q.lhs = r.numerator[k];
        q.rhs = r.denominator[k];
        q.metadata = {{"eps", r.eps[k]}, {"t", r.t}, {"spread", r.spread}};
        q.finish(10.0);
        q.passed = q.passed && r.passed;
        out.push_back(q);
    }
    return out;
}

}  // namespace blmhd
