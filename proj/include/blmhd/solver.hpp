/// @file solver.hpp
/// @brief IMEX time integration of the shifted regularized system and a priori monitors.
#pragma once

#include "blmhd/sources.hpp"

#include <memory>
#include <string>

namespace blmhd {

enum class Scheme {
    imex_be,  ///< first order: backward Euler diffusion, forward Euler transport
    imex_cn   ///< second order: low-storage RK3 transport with Crank-Nicolson diffusion
};

struct SolverConfig {
    Physics physics;
    double dt = 1e-3;
    double t_end = 1.0;
    Scheme scheme = Scheme::imex_cn;
    double cfl_safety = 0.5;
    double delta0 = 0.25;
    double l = 2.0;
    /// Keep every n-th nominal step in the trajectory.
    int output_stride = 1;
    /// Abort on monitor breach (off for manufactured-solution runs).
    bool enforce_monitors = true;
    int max_halvings = 20;

    void validate() const;
};

const char* scheme_name(Scheme s);

struct MonitorStatus {
    double time = 0.0;
    double h_floor = 1.0;
    double rho_sup = 0.0;
    double shear_sup = 0.0;
    bool rho_band_ok = true;
    bool breached = false;
    /// Which conditions failed, comma separated.
    std::string reason;
};

/// delta = delta0/2; breach when min(h+1) < delta, ||rho||_inf > (2l-1) delta^2/2
/// or ||d_y(u - exp(-y))||_{L^inf_1} > 1/delta.
MonitorStatus monitor(const State& s, double delta0, double l);

struct MonitorBreach : std::runtime_error {
    MonitorStatus status;
    explicit MonitorBreach(MonitorStatus s) : std::runtime_error("monitor breach: " + s.reason), status(std::move(s)) {}
};

struct SolverDivergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Largest stable substep for the explicit part at this state.
double cfl_limit(const State& s, double cfl_safety);

/// One substep of exactly dt (no CFL control).
State advance(const State& s, double dt, Scheme scheme, const PdeContext& ctx = {});

/// One nominal step: dt split into 2^k equal substeps when dt exceeds the CFL limit.
/// Throws SolverDivergence on non-finite values and MonitorBreach when enforced.
State step(const State& s, const SolverConfig& cfg, const PdeContext& ctx = {});

/// Number of halvings step() applies to the nominal dt at this state.
int substep_halvings(const State& s, const SolverConfig& cfg);

struct Trajectory {
    std::vector<State> states;
    /// Monitor status for each stored state.
    std::vector<MonitorStatus> monitors;
    /// Monitor status after every nominal step, t = 0 included.
    std::vector<MonitorStatus> monitor_history;
    bool breached = false;
    MonitorStatus breach;
    /// Last time with all monitors satisfied.
    double unbreached_until = 0.0;
    int steps = 0;
    int substeps = 0;
    std::shared_ptr<const SourceBundle> sources;
    std::shared_ptr<const Forcing> forcing;

    PdeContext context() const { return PdeContext{sources.get(), forcing.get()}; }
};

/// Steps to t_end or the first monitor breach. Physics, delta0 of the initial state are overwritten by cfg.
Trajectory run(const State& initial, const SolverConfig& cfg, std::shared_ptr<const SourceBundle> sources = nullptr,
               std::shared_ptr<const Forcing> forcing = nullptr);

}  // namespace blmhd
