/// @file ops.hpp
/// @brief Discrete x/y derivatives, conormal operators and y-antiderivatives.
#pragma once

#include "blmhd/grid.hpp"

#include <string>

namespace blmhd {

/// Conormal label Z^a = d_t^t_count Z1^x_count Z2^z2_count.
struct MultiIndex {
    int t_count = 0;
    int x_count = 0;
    int z2_count = 0;

    int order() const { return t_count + x_count + z2_count; }
    int tangential_order() const { return t_count + x_count; }
    bool operator==(const MultiIndex&) const = default;
    std::string label() const;
};

/// Periodic x-derivative: 4th-order central or spectral, per the grid spec.
Field dx(const Field& f);
/// Periodic 3-point second difference in x.
Field dxx(const Field& f);
/// y-derivative, 3-point central on the nonuniform grid, one-sided at both ends.
Field dy(const Field& f);
/// Second y-derivative, one-sided four-point at the end rows.
Field dyy(const Field& f);
/// Second y-derivative with a homogeneous Neumann ghost closure at the wall.
Field dyy_neumann(const Field& f);
/// Z2 = phi(y) d_y; exactly zero on the wall row.
Field z2(const Field& f);
/// Cumulative trapezoid integral from the wall: F(x, y_j) = int_0^{y_j} f.
Field cumint_y(const Field& f);

/// Multiply each y-row j by p[j].
Field scale_rows(Field f, const std::vector<double>& p);

/// Spatial conormal derivative. Throws MissingPdeContext for t_count > 0.
Field zderiv(const Field& f, const MultiIndex& a);
/// Apply the x and Z2 parts only (the time part is taken care of by the caller).
Field zderiv_spatial(const Field& f, int x_count, int z2_count);

struct MissingPdeContext : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace blmhd
