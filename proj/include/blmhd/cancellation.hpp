/// @file cancellation.hpp
/// @brief Good unknowns w_m = Z^a w - eta_w Z^a psi, their evolution residuals
/// and the norm-equivalence inequalities between w_m and Z^a w.
#pragma once

#include "blmhd/inequalities.hpp"
#include "blmhd/solver.hpp"

namespace blmhd {

struct HFloorViolation : PreconditionError {
    using PreconditionError::PreconditionError;
};

/// Throws HFloorViolation when min(h + 1) < floor.
void check_h_floor(const Field& h_shift, double floor);

struct GoodUnknowns {
    MultiIndex alpha1;
    Field eta_rho, eta_u, eta_h;
    Field rho_m, u_m, h_m;
    /// Z^a of rho, u, h, psi.
    Field z_rho, z_u, z_h, z_psi;
};

/// Tangential alpha1 only (z2_count = 0). delta_floor <= 0 means delta0/2.
GoodUnknowns good_unknowns(const State& s, const MultiIndex& alpha1, double delta_floor = 0.0,
                           const PdeContext& ctx = {});
/// Same from a precomputed jet of order >= alpha1.t_count.
GoodUnknowns good_unknowns(const State& s, const SolutionJet& jet, const MultiIndex& alpha1, double delta_floor = 0.0);

enum class GoodEquation { rho_m, u_m, h_m };
const char* equation_name(GoodEquation e);

/// Sign in front of the Z^a psi (d_t + transport - diffusion) eta term of the
/// rho_m and h_m equations. `corrected` is what the substitution produces;
/// `as_printed` flips it and is kept to show that the residual then stalls.
enum class SignConvention { corrected, as_printed };

struct CancellationSeries {
    GoodEquation which = GoodEquation::h_m;
    MultiIndex alpha1;
    std::vector<double> times;
    /// LHS - RHS on interior rows, boundary rows zero.
    std::vector<Field> residual;
    std::vector<double> sup;
};

/// Residual of one good-unknown equation at a single state. At most one time
/// derivative in alpha1; with a Forcing in ctx alpha1 must be purely spatial.
Field cancellation_residual(const State& s, const MultiIndex& alpha1, GoodEquation which, const PdeContext& ctx = {},
                            SignConvention sign = SignConvention::corrected, double delta_floor = 0.0);

CancellationSeries cancellation_residual(const Trajectory& traj, const MultiIndex& alpha1, GoodEquation which,
                                         SignConvention sign = SignConvention::corrected, double delta_floor = 0.0);

/// The four good-unknown inequalities for psi and h plus the tangential control
/// of Z^a(rho, u, h) by (rho_m, u_m, h_m). Requires min(h+1) >= delta and l >= 1.
std::vector<InequalityReport> norm_equivalence_check(const State& s, const MultiIndex& alpha1, double l, double delta,
                                                     const PdeContext& ctx = {}, double tol = 1e-2,
                                                     const std::string& subject = "");

/// Multi-index binomial coefficient C(a, b) over the t and x counts.
double binomial(const MultiIndex& a, const MultiIndex& b);

}  // namespace blmhd
