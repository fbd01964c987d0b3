/// @file experiments.hpp
/// @brief Vanishing-viscosity ladder, two-solution stability and the outer-flow matching relations.
#pragma once

#include "blmhd/solver.hpp"

#include <functional>
#include <string>
#include <vector>

namespace blmhd {

struct SweepResult {
    std::vector<double> eps_ladder;
    /// Output times shared by all valid runs.
    std::vector<double> times;
    /// pairwise_diffs[k][n]: H^2_0 conormal norm of S(eps_k) - S(eps_{k+1}) at times[n].
    std::vector<std::vector<double>> pairwise_diffs;
    /// max over time of each pairwise difference.
    std::vector<double> sup_diffs;
    /// sup_diffs[k+1] / sup_diffs[k].
    std::vector<double> rates;
    bool rates_computed = false;
    /// False for a rung whose run breached a monitor.
    std::vector<bool> valid;
    std::vector<double> unbreached_until;

    /// sup_diffs strictly decreasing and every rung valid.
    bool cauchy_decreasing() const;
};

/// Runs the solver once per eps (bootstrapped sources, same grid and steps) and
/// compares neighbours at matched output times. threads <= 1 runs serially.
SweepResult eps_sweep(const State& initial, const SolverConfig& cfg,
                      const std::vector<double>& ladder = {0.1, 0.05, 0.025, 0.0125}, int threads = 1, int m = 2);

struct DiffGoodUnknowns {
    double time = 0.0;
    Field eta1, eta2, eta3;
    Field phi_bar;
    Field rho_i, u_i, h_i;
    /// Raw differences of (rho, u, h) between the two runs.
    Field rho_bar, u_bar, h_bar;
    /// ||(rho_i, u_i, h_i)||^2_{L^2_0}
    double norm_sq = 0.0;
};

/// Difference quantities between two states; needs min(h_2 + 1) >= floor.
DiffGoodUnknowns diff_good_unknowns(const State& s1, const State& s2, double floor);

struct StabilityResult {
    std::vector<DiffGoodUnknowns> series;
    /// Least-squares slope of log((N + floor)/(N_0 + floor)) against t through the origin.
    double gronwall_c = 0.0;
    /// sup_t log((N + floor)/(N_0 + floor))/t, the smallest constant with an exact envelope.
    double gronwall_c_min = 0.0;
    /// max over t of (N + floor)/((N_0 + floor) e^{C t}) - 1 with the fitted C.
    double envelope_excess = 0.0;
    double max_norm = 0.0;
    /// Max |difference| over all stored fields; zero for identical data.
    double max_raw_diff = 0.0;
    double unbreached_until = 0.0;
    bool envelope_ok = false;
};

inline constexpr double gronwall_floor = 1e-28;

/// Evolves both data sets with their own bootstrapped sources and fits the growth of
/// the difference. envelope_tol bounds envelope_excess.
StabilityResult stability_pair(const State& data1, const State& data2, const SolverConfig& cfg, int m = 2,
                               double envelope_tol = 0.5, int threads = 1);

/// A trace on the boundary-layer top given by its value and first derivatives.
struct Trace {
    std::function<double(double, double)> value, dt, dx;
};

Trace constant_trace(double c);

struct OuterFlow {
    Trace theta, U, H;
    /// Pressure gradient along x; zero for a constant pressure.
    std::function<double(double, double)> dx_p;
};

struct MatchingResult {
    std::vector<double> x;
    std::vector<double> times;
    /// residual[r][n][k] of relation r at times[n], x[k].
    std::vector<std::vector<std::vector<double>>> residual;
    std::vector<double> max_abs;
};

/// d_t theta + U d_x theta, theta d_t U + theta U d_x U + d_x p - H d_x H,
/// d_t H + U d_x H - H d_x U on a periodic x grid.
MatchingResult matching_check(const OuterFlow& flow, const std::vector<double>& times, int nx = 64);

}  // namespace blmhd
