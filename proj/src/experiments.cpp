#include "blmhd/experiments.hpp"

#include "blmhd/cancellation.hpp"
#include "blmhd/norms.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>

namespace blmhd {

namespace {

/// Evaluates f(0..n-1) with at most `threads` tasks in flight.
template <class R, class F>
std::vector<R> parallel_map(int n, int threads, F f) {
    std::vector<R> out(n);
    if (threads <= 1) {
        for (int k = 0; k < n; ++k) out[k] = f(k);
        return out;
    }
    for (int k0 = 0; k0 < n; k0 += threads) {
        std::vector<std::future<R>> batch;
        for (int k = k0; k < std::min(n, k0 + threads); ++k) batch.push_back(std::async(std::launch::async, f, k));
        for (int k = 0; k < static_cast<int>(batch.size()); ++k) out[k0 + k] = batch[k].get();
    }
    return out;
}

Trajectory run_with_sources(const State& initial, const SolverConfig& cfg, int m) {
    auto src = std::make_shared<const SourceBundle>(bootstrap_time_derivatives(initial, m));
    return run(initial, cfg, src);
}

std::vector<Field> diff_stack(const std::vector<Field>& a, const std::vector<Field>& b) {
    std::vector<Field> d;
    for (std::size_t k = 0; k < a.size(); ++k) d.push_back(a[k] - b[k]);
    return d;
}

}  // namespace

bool SweepResult::cauchy_decreasing() const {
    if (sup_diffs.size() < 2) return false;
    if (std::find(valid.begin(), valid.end(), false) != valid.end()) return false;
    for (std::size_t k = 1; k < sup_diffs.size(); ++k)
        if (!(sup_diffs[k] < sup_diffs[k - 1])) return false;
    return true;
}

SweepResult eps_sweep(const State& initial, const SolverConfig& cfg, const std::vector<double>& ladder, int threads,
                      int m) {
    if (ladder.empty()) throw std::invalid_argument("eps ladder is empty");
    for (std::size_t k = 1; k < ladder.size(); ++k)
        if (!(ladder[k] < ladder[k - 1])) throw std::invalid_argument("eps ladder must be strictly decreasing");
    SweepResult res;
    res.eps_ladder = ladder;
    const int n = static_cast<int>(ladder.size());
    const auto runs = parallel_map<Trajectory>(n, threads, [&](int k) {
        SolverConfig c = cfg;
        c.physics.eps = ladder[k];
        return run_with_sources(initial, c, m);
    });
    std::size_t len = std::numeric_limits<std::size_t>::max();
    for (const auto& t : runs) {
        res.valid.push_back(!t.breached);
        res.unbreached_until.push_back(t.unbreached_until);
        len = std::min(len, t.states.size());
    }
    for (std::size_t q = 0; q < len; ++q) res.times.push_back(runs[0].states[q].time);
    if (n < 2) return res;

    // Time stacks of every stored state, H^2 needs two time levels.
    const int order = 2;
    const NormSpec spec{order, 0.0, NormMode::full};
    auto stacks = parallel_map<std::vector<SolutionJet>>(n, threads, [&](int k) {
        std::vector<SolutionJet> out;
        for (std::size_t q = 0; q < len; ++q) out.push_back(solution_jet(runs[k].states[q], order, runs[k].context()));
        return out;
    });
    for (int k = 0; k + 1 < n; ++k) {
        std::vector<double> d;
        for (std::size_t q = 0; q < len; ++q) {
            double s = 0.0;
            for (FieldId id : {FieldId::rho, FieldId::u, FieldId::h})
                s += conormal_norm_sq(diff_stack(time_stack(stacks[k][q], id), time_stack(stacks[k + 1][q], id)), spec);
            d.push_back(std::sqrt(s));
        }
        res.sup_diffs.push_back(*std::max_element(d.begin(), d.end()));
        res.pairwise_diffs.push_back(std::move(d));
    }
    if (res.sup_diffs.size() >= 2) {
        for (std::size_t k = 1; k < res.sup_diffs.size(); ++k)
            res.rates.push_back(res.sup_diffs[k - 1] > 0.0 ? res.sup_diffs[k] / res.sup_diffs[k - 1]
                                                           : std::numeric_limits<double>::quiet_NaN());
        res.rates_computed = true;
    }
    return res;
}

DiffGoodUnknowns diff_good_unknowns(const State& s1, const State& s2, double floor) {
    check_h_floor(s2.h, floor);
    DiffGoodUnknowns d;
    d.time = s2.time;
    const Field h2 = s2.h + 1.0;
    d.eta1 = dy(s2.rho) / h2;
    d.eta2 = (dy(s2.u) + background(s2.grid_ptr())) / h2;
    d.eta3 = dy(s2.h) / h2;
    d.rho_bar = s1.rho - s2.rho;
    d.u_bar = s1.u - s2.u;
    d.h_bar = s1.h - s2.h;
    d.phi_bar = cumint_y(d.h_bar);
    d.rho_i = d.rho_bar - d.eta1 * d.phi_bar;
    d.u_i = d.u_bar - d.eta2 * d.phi_bar;
    d.h_i = d.h_bar - d.eta3 * d.phi_bar;
    d.norm_sq = weighted_l2_sq(d.rho_i, 0.0) + weighted_l2_sq(d.u_i, 0.0) + weighted_l2_sq(d.h_i, 0.0);
    return d;
}

StabilityResult stability_pair(const State& data1, const State& data2, const SolverConfig& cfg, int m,
                               double envelope_tol, int threads) {
    if (data1.grid_ptr() != data2.grid_ptr() &&
        (data1.grid().nx() != data2.grid().nx() || data1.grid().ny() != data2.grid().ny()))
        throw std::invalid_argument("stability pair needs a shared grid");
    const State* data[2] = {&data1, &data2};
    const auto runs =
        parallel_map<Trajectory>(2, threads, [&](int k) { return run_with_sources(*data[k], cfg, m); });
    StabilityResult res;
    res.unbreached_until = std::min(runs[0].unbreached_until, runs[1].unbreached_until);
    const std::size_t len = std::min(runs[0].states.size(), runs[1].states.size());
    const double floor = 0.5 * cfg.delta0;
    for (std::size_t q = 0; q < len; ++q) {
        const State& a = runs[0].states[q];
        const State& b = runs[1].states[q];
        if (a.time > res.unbreached_until + 1e-12) break;
        DiffGoodUnknowns d = diff_good_unknowns(a, b, floor);
        res.max_raw_diff = std::max({res.max_raw_diff, d.rho_bar.max_abs(), d.u_bar.max_abs(), d.h_bar.max_abs()});
        res.max_norm = std::max(res.max_norm, std::sqrt(d.norm_sq));
        res.series.push_back(std::move(d));
    }
    if (res.series.size() < 2) return res;

    const double t0 = res.series.front().time;
    const double l0 = std::log(res.series.front().norm_sq + gronwall_floor);
    double stl = 0.0, stt = 0.0;
    res.gronwall_c_min = -std::numeric_limits<double>::infinity();
    for (std::size_t q = 1; q < res.series.size(); ++q) {
        const double t = res.series[q].time - t0;
        const double y = std::log(res.series[q].norm_sq + gronwall_floor) - l0;
        stl += t * y;
        stt += t * t;
        res.gronwall_c_min = std::max(res.gronwall_c_min, y / t);
    }
    res.gronwall_c = stl / stt;
    double excess = 0.0;
    for (std::size_t q = 1; q < res.series.size(); ++q) {
        const double t = res.series[q].time - t0;
        const double y = std::log(res.series[q].norm_sq + gronwall_floor) - l0;
        excess = std::max(excess, std::exp(y - res.gronwall_c * t) - 1.0);
    }
    res.envelope_excess = excess;
    res.envelope_ok = std::isfinite(res.gronwall_c) && excess <= envelope_tol;
    return res;
}

Trace constant_trace(double c) {
    return Trace{[c](double, double) { return c; }, [](double, double) { return 0.0; },
                 [](double, double) { return 0.0; }};
}

MatchingResult matching_check(const OuterFlow& f, const std::vector<double>& times, int nx) {
    if (nx < 1) throw std::invalid_argument("matching check needs nx >= 1");
    MatchingResult r;
    for (int k = 0; k < nx; ++k) r.x.push_back(2.0 * std::numbers::pi * k / nx);
    r.times = times;
    r.residual.assign(3, std::vector<std::vector<double>>(times.size(), std::vector<double>(nx)));
    r.max_abs.assign(3, 0.0);
    for (std::size_t n = 0; n < times.size(); ++n) {
        const double t = times[n];
        for (int k = 0; k < nx; ++k) {
            const double x = r.x[k];
            const double th = f.theta.value(t, x), U = f.U.value(t, x), H = f.H.value(t, x);
            const double px = f.dx_p ? f.dx_p(t, x) : 0.0;
            const double res[3] = {f.theta.dt(t, x) + U * f.theta.dx(t, x),
                                   th * f.U.dt(t, x) + th * U * f.U.dx(t, x) + px - H * f.H.dx(t, x),
                                   f.H.dt(t, x) + U * f.H.dx(t, x) - H * f.U.dx(t, x)};
            for (int q = 0; q < 3; ++q) {
                r.residual[q][n][k] = res[q];
                r.max_abs[q] = std::max(r.max_abs[q], std::abs(res[q]));
            }
        }
    }
    return r;
}

}  // namespace blmhd
