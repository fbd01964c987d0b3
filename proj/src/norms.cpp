#include "blmhd/norms.hpp"

#include <algorithm>
#include <cmath>

namespace blmhd {

const char* mode_name(NormMode m) {
    switch (m) {
        case NormMode::full: return "full";
        case NormMode::tangential_capped: return "tangential-capped";
        case NormMode::tangential_only: return "tangential-only";
    }
    return "?";
}

double weighted_l2_sq(const Field& f, double l) {
    const Grid& g = f.grid();
    const auto& y = g.y();
    const auto& wy = g.wy();
    std::vector<double> w(g.ny());
    for (int j = 0; j < g.ny(); ++j) w[j] = wy[j] * std::pow(1.0 + y[j], 2.0 * l);
    double total = 0.0;
    for (int i = 0; i < g.nx(); ++i) {
        auto s = f.line(i);
        double acc = 0.0;
        for (int j = 0; j < g.ny(); ++j) acc += w[j] * s[j] * s[j];
        total += acc;
    }
    return total * g.wx();
}

double weighted_l2(const Field& f, double l) { return std::sqrt(weighted_l2_sq(f, l)); }

double weighted_linf(const Field& f, double l, double y_limit) {
    const Grid& g = f.grid();
    const auto& y = g.y();
    double m = 0.0;
    for (int j = 0; j < g.ny(); ++j) {
        if (y[j] > y_limit) break;
        const double w = std::pow(1.0 + y[j], l);
        for (int i = 0; i < g.nx(); ++i) m = std::max(m, w * std::abs(f(i, j)));
    }
    return m;
}

std::vector<MultiIndex> tangential_indices(int order) {
    std::vector<MultiIndex> out;
    for (int t = order; t >= 0; --t) out.push_back({t, order - t, 0});
    return out;
}

std::vector<MultiIndex> index_set(const NormSpec& spec) {
    if (spec.m < 0) throw std::invalid_argument("norm order m must be >= 0");
    std::vector<MultiIndex> out;
    const int cap = std::max(spec.m - 1, 0);
    for (int n = 0; n <= spec.m; ++n)
        for (int t = n; t >= 0; --t)
            for (int x = n - t; x >= 0; --x) {
                const MultiIndex a{t, x, n - t - x};
                if (spec.mode == NormMode::tangential_capped && a.tangential_order() > cap) continue;
                if (spec.mode == NormMode::tangential_only && a.z2_count != 0) continue;
                out.push_back(a);
            }
    return out;
}

double conormal_norm_sq(const std::vector<Field>& stack, const NormSpec& spec) {
    double s = 0.0;
    for (const auto& a : index_set(spec)) s += weighted_l2_sq(zderiv(stack, a), spec.l);
    return s;
}

double conormal_norm(const std::vector<Field>& stack, const NormSpec& spec) {
    return std::sqrt(conormal_norm_sq(stack, spec));
}

double conormal_norm_static(const Field& f, const NormSpec& spec) {
    std::vector<Field> stack{f};
    for (int k = 0; k < spec.m; ++k) stack.emplace_back(f.grid_ptr());
    return conormal_norm(stack, spec);
}

double conormal_norm(const Field& f, const NormSpec& spec) { return conormal_norm(std::vector<Field>{f}, spec); }

double conormal_norm(const State& s, FieldId which, const NormSpec& spec, const PdeContext& ctx) {
    return conormal_norm(time_stack(s, which, spec.m, ctx), spec);
}

double conormal_linf_sq(const std::vector<Field>& stack, const NormSpec& spec, double y_limit) {
    double s = 0.0;
    for (const auto& a : index_set(spec)) {
        const double v = weighted_linf(zderiv(stack, a), spec.l, y_limit);
        s += v * v;
    }
    return s;
}

namespace {
std::vector<Field> shifted(const std::vector<Field>& stack, int i) {
    return std::vector<Field>(stack.begin() + std::min<std::size_t>(i, stack.size()), stack.end());
}

template <class Op>
std::vector<Field> map_stack(const std::vector<Field>& stack, Op op) {
    std::vector<Field> out;
    out.reserve(stack.size());
    for (const auto& f : stack) out.push_back(op(f));
    return out;
}
}  // namespace

BNorms b_norms(const Field& rho, const Field& u1, const Field& h1, int m, double l, const Physics& physics) {
    if (m < 1) throw std::invalid_argument("b_norms needs m >= 1");
    Physics p = physics;
    p.eps = 0.0;
    const State s = state_from_physical(rho, u1, h1, p);
    const SolutionJet jet = solution_jet(s, 2 * m - 1);
    const Field bg = background(s.grid_ptr());

    auto r = time_stack(jet.rho);
    auto u = time_stack(jet.u);
    auto h = time_stack(jet.h);
    u[0] -= bg;  // u1 - 1 and its time derivatives

    const NormSpec hm{m, l, NormMode::full};
    const NormSpec hm1{m - 1, l, NormMode::full};
    const NormSpec h1inf1{1, 1.0, NormMode::full};
    const NormSpec h1inf0{1, 0.0, NormMode::full};

    auto dy_ = [](const Field& f) { return dy(f); };
    auto dx_ = [](const Field& f) { return dx(f); };
    const auto ry = map_stack(r, dy_), uy = map_stack(u, dy_), hy = map_stack(h, dy_);

    double bar = conormal_norm_sq(r, hm) + conormal_norm_sq(u, hm) + conormal_norm_sq(h, hm);
    bar += conormal_norm_sq(ry, hm1) + conormal_norm_sq(uy, hm1) + conormal_norm_sq(hy, hm1);
    bar += conormal_linf_sq(ry, h1inf1);

    const std::vector<std::vector<Field>> group = {map_stack(r, dx_), ry, map_stack(u, dx_), map_stack(h, dx_)};
    const std::vector<std::vector<Field>> second = {
        map_stack(r, [](const Field& f) { return dy(dx(dx(f))); }),
        map_stack(r, [](const Field& f) { return dy(dyy(f)); })};

    BNorms out;
    double hat = 0.0, hat_r = 0.0;
    for (int i = 0; i < m; ++i) {
        double a = 0.0, c = 0.0, b = 0.0, b_r = 0.0;
        for (const auto& q : group) {
            a += conormal_norm_sq(shifted(q, i), hm);
            c += conormal_norm_sq(map_stack(shifted(q, i), dy_), hm1);
        }
        for (const auto& q : second) {
            b += conormal_linf_sq(shifted(q, i), h1inf0);
            b_r += conormal_linf_sq(shifted(q, i), h1inf0, 5.0);
        }
        hat += a + b + c;
        hat_r += a + b_r + c;
    }
    out.b_bar = std::sqrt(bar);
    out.b_hat = std::sqrt(hat);
    out.b_hat_restricted = std::sqrt(hat_r);
    return out;
}

}  // namespace blmhd
