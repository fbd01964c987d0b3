/// @file state.hpp
/// @brief Shifted unknowns, derived fields, physical parameters and PDE context.
#pragma once

#include "blmhd/jet.hpp"

#include <functional>
#include <memory>
#include <string>

namespace blmhd {

template <class F>
struct Triple {
    F rho, u, h;
};

struct Physics {
    double mu = 1.0;
    double kappa = 1.0;
    double eps = 0.01;
};

/// rho = rho_phys - 1, u = u1 - 1 + exp(-y), h = h1 - 1, plus v, g, psi.
struct State {
    Field rho, u, h;
    Field v, g, psi;
    Physics physics;
    double time = 0.0;
    double delta0 = 0.25;

    const GridPtr& grid_ptr() const { return rho.grid_ptr(); }
    const Grid& grid() const { return rho.grid(); }
};

enum class FieldId { rho, u, h, v, g, psi };
const char* field_name(FieldId id);

/// exp(-y) sampled on the grid.
Field background(const GridPtr& grid);

/// Fills v = -int_0^y dx u, g = -int_0^y dx h and psi = int_0^y h.
void derive_secondary(State& s);
State derived(State s);

State make_state(Field rho, Field u, Field h, Physics physics, double time = 0.0, double delta0 = 0.25);

using Profile2D = std::function<double(double, double)>;

/// Physical data (rho, u1, h1) as functions of (x, y).
struct InitialData {
    std::string name;
    Profile2D rho;
    Profile2D u1;
    Profile2D h1;
};

State state_from_physical(const GridPtr& grid, const InitialData& data, Physics physics, double delta0 = 0.25);
State state_from_physical(const Field& rho, const Field& u1, const Field& h1, Physics physics, double delta0 = 0.25);

/// Physical fields back from a state.
Triple<Field> physical_fields(const State& s);

/// Coefficients d_t^i (d_x rho, d_y rho, d_x u1, d_x h1)(0), i = 0..m-1.
struct SourceBundle {
    int m = 0;
    std::vector<Field> dx_rho, dy_rho, dx_u1, dx_h1;
    bool empty() const { return m == 0; }
};

/// Extra right-hand sides: added to d_t rho, to the rho-multiplied momentum
/// equation, and to d_t h.
class Forcing {
public:
    virtual ~Forcing() = default;
    virtual Triple<Field> at(const GridPtr& grid, double t) const = 0;
    /// Taylor coefficients in time around t. Only order 0 is required.
    virtual std::vector<Triple<Field>> taylor(const GridPtr& grid, double t, int order) const;
};

struct PdeContext {
    const SourceBundle* sources = nullptr;
    const Forcing* forcing = nullptr;
};

struct DensityGuard : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace blmhd
