/// @file energy.hpp
/// @brief Energy functionals of the a priori estimates, per state and along a trajectory.
#pragma once

#include "blmhd/cancellation.hpp"

#include <string>
#include <vector>

namespace blmhd {

struct EnergyReport {
    double time = 0.0;
    /// sum over |a| <= m, |a1| <= m-1 of ||Z^a (rho, u, h)||^2_{L^2_l}
    double E = 0.0;
    /// L^inf aggregate at this time, and its running sup (equal for a single state).
    double Q = 0.0;
    double Q_sup = 0.0;
    double X = 1.0;
    double Y = 1.0;
    double Dx = 0.0;
    double Dy = 0.0;
    /// Integrands of the time integrals in Theta and Xi.
    double theta_rate = 0.0;
    double xi_rate = 0.0;
    /// Trapezoid integrals of the rates from the first slice.
    double theta_int = 0.0;
    double xi_int = 0.0;
    /// sup Y + theta_int and sup X + xi_int.
    double Theta = 1.0;
    double Xi = 1.0;
    MonitorStatus monitor;
};

struct EnergySpec {
    int m = 2;
    double l = 2.0;
    double delta0 = 0.25;
    /// Treat the fields as time independent (every d_t level zero) instead of
    /// taking time derivatives from the equations.
    bool frozen = false;
};

/// Needs min(h+1) >= delta0/2 for the good-unknown pieces.
EnergyReport instantaneous_functionals(const State& s, const EnergySpec& spec, const PdeContext& ctx = {});

/// One report per stored state, stopping before the first state that violates the h floor.
std::vector<EnergyReport> trajectory_report(const Trajectory& traj, const EnergySpec& spec);

/// Fixed CSV column names and the matching row values.
const std::vector<std::string>& energy_columns();
std::vector<double> energy_row(const EnergyReport& r);

}  // namespace blmhd
