/// @file manufactured.hpp
/// @brief Manufactured solutions, their forcing and the discrete residual.
#pragma once

#include "blmhd/solver.hpp"

#include <memory>

namespace blmhd {

/// Values and partial derivatives of shifted (rho, u, h) plus v and g at one point.
struct MmsPoint {
    double r = 0, rt = 0, rx = 0, ry = 0, rxx = 0, ryy = 0;
    double u = 0, ut = 0, ux = 0, uy = 0, uxx = 0, uyy = 0;
    double h = 0, ht = 0, hx = 0, hy = 0, hxx = 0, hyy = 0;
    double v = 0, g = 0;
};

class ManufacturedSolution {
public:
    virtual ~ManufacturedSolution() = default;
    virtual MmsPoint eval(double t, double x, double y) const = 0;
    virtual std::string name() const = 0;
};

/// rho = a e^{-t} e^{-y^2} cos x, u = b y e^{-y^2} sin(x+t), h = c e^{-y^2} sin(x-t).
class GaussianManufactured : public ManufacturedSolution {
public:
    GaussianManufactured(double a, double b, double c) : a_(a), b_(b), c_(c) {}
    MmsPoint eval(double t, double x, double y) const override;
    std::string name() const override { return "gaussian"; }

private:
    double a_, b_, c_;
};

/// rho = h = 0, u = exp(-y): the outer state in shifted form.
class EquilibriumManufactured : public ManufacturedSolution {
public:
    MmsPoint eval(double t, double x, double y) const override;
    std::string name() const override { return "equilibrium"; }
};

/// Exact forcing of the shifted system for a manufactured solution (no compatibility sources).
class ManufacturedForcing : public Forcing {
public:
    ManufacturedForcing(std::shared_ptr<const ManufacturedSolution> ms, Physics p) : ms_(std::move(ms)), p_(p) {}
    Triple<Field> at(const GridPtr& grid, double t) const override;
    const ManufacturedSolution& solution() const { return *ms_; }

private:
    std::shared_ptr<const ManufacturedSolution> ms_;
    Physics p_;
};

/// Sampled manufactured fields at time t as a State.
State manufactured_state(const GridPtr& grid, const ManufacturedSolution& ms, double t, const Physics& p);

/// Per-equation residual of the discrete operator on the sampled fields:
/// d_t w (exact) - RHS_h(w) - F, with the momentum row multiplied by rho.
/// Dirichlet rows are zero. Throws PreconditionError on wall-incompatible fields
/// (d_y rho, d_y h or d_t u nonzero on the wall).
Triple<Field> pde_residual(const GridPtr& grid, const ManufacturedSolution& ms, double t, const Physics& p);

/// L^2_0 norm of the difference between a state and the manufactured fields.
double manufactured_error(const State& s, const ManufacturedSolution& ms);

}  // namespace blmhd
