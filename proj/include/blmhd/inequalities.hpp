/// @file inequalities.hpp
/// @brief Hardy, Sobolev and Moser checks plus the weighted heat-kernel estimate.
#pragma once

#include "blmhd/norms.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace blmhd {

struct InequalityReport {
    std::string inequality;
    std::string subject;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double tolerance = 0.0;
    bool passed = true;
    /// False when a hypothesis (decay, wall trace) only holds approximately.
    bool hypotheses_met = true;
    std::vector<std::pair<std::string, double>> metadata;

    /// ratio = lhs/rhs with 0/0 read as 0; passed = ratio <= bound + tolerance.
    void finish(double bound = 1.0);
};

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// ||f||_{L^2_lambda} <= 2/(2 lambda + 1) ||d_y f||_{L^2_{lambda+1}}.
/// Rejects lambda <= -1/2, a nonzero wall row, or no decay at y_max.
InequalityReport hardy_check(const Field& f, double lambda, double tol = 1e-2, const std::string& subject = "");

/// ||f||_inf against ||f|| + ||d_x f|| + ||d_y f|| + ||d_xy f|| in L^2_0; passes when ratio <= c_star.
InequalityReport sobolev_check(const Field& f, double c_star = 2.0, const std::string& subject = "");

/// One time slice: time stacks [f, d_t f, ...] of both factors.
struct MoserSlice {
    double t = 0.0;
    std::vector<Field> f;
    std::vector<Field> g;
};

struct MoserSpec {
    MultiIndex beta;
    MultiIndex gamma;
    int m = 2;
    double l1 = 0.0;
    double l2 = 0.0;
};

/// int ||Z^b f Z^g g||^2_{L^2_l} against
/// ||<y>^l1 f||^2_inf int ||g||^2_{H^m_l2} + ||<y>^l1 g||^2_inf int ||f||^2_{H^m_l2}.
/// Time integrals by the trapezoid rule over the slices. Throws on |b + g| != m.
InequalityReport moser_check(const std::vector<MoserSlice>& series, const MoserSpec& spec, double c_star,
                             const std::string& subject = "");

/// Half-line heat problem d_t F - eps d_xx F = G, F(t, 0) = 0, on a uniform grid x_k = k h.
struct HeatProblem {
    std::string name;
    double eps = 0.01;
    double x_max = 30.0;
    int n = 3001;
    std::function<double(double)> f0;
    /// Optional forcing G(t, x).
    std::function<double(double, double)> g;
    double t_end = 1.0;

    std::vector<double> grid() const;
};

struct HeatSolution {
    std::vector<double> x;
    std::vector<double> times;
    std::vector<std::vector<double>> F;
    /// x d_x F at the nodes.
    std::vector<std::vector<double>> xFx;
};

/// Odd extension + exact Gaussian kernel on the piecewise-linear interpolant,
/// Gauss-Legendre quadrature for the Duhamel integral. Times must lie in (0, t_end].
HeatSolution heat_solve(const HeatProblem& p, const std::vector<double>& times, int duhamel_nodes = 24);

/// Gauss-Legendre nodes and weights on [a, b].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n, double a, double b);

struct HeatBoundResult {
    std::string problem;
    double t = 0.0;
    std::vector<double> eps;
    std::vector<double> numerator;
    std::vector<double> denominator;
    std::vector<double> ratio;
    double spread = 0.0;
    /// max over eps of ||F(t)||_inf - (||F0||_inf + int ||G||_inf).
    double max_principle_excess = 0.0;
    bool passed = true;
};

/// ratio(eps) = ||x d_x F(t)||_inf / (||F0|| + ||x d_x F0|| + int_0^t ||G|| + ||x d_x G||), sup norms.
/// Passes when max/min over eps <= max_spread and every ratio <= c_star.
HeatBoundResult heat_bound_check(const HeatProblem& base, const std::vector<double>& eps_grid, double t,
                                 double max_spread = 4.0, double c_star = 10.0);

std::vector<InequalityReport> to_reports(const HeatBoundResult& r);

}  // namespace blmhd
