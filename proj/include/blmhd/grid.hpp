/// @file grid.hpp
/// @brief Periodic-in-x, stretched-in-y structured grid and scalar fields on it.
#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace blmhd {

enum class XScheme { fd4, spectral };

struct GridSpec {
    int nx = 64;
    int ny = 128;
    double y_max = 30.0;
    double stretch = 3.0;
    XScheme x_scheme = XScheme::fd4;

    /// Throws std::invalid_argument when nx, ny < 8 or y_max < 10.
    void validate() const;
};

struct GridCoordinates {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> wx;
    std::vector<double> wy;
};

/// y_j = y_max (exp(s j/(ny-1)) - 1)/(exp(s) - 1), uniform for s = 0.
/// Only needs ny >= 2 and y_max > 0, so tiny grids are allowed here.
std::vector<double> y_coordinates(int ny, double y_max, double stretch);

/// Coordinates and quadrature weights (trapezoid in y, 2*pi/nx in x).
GridCoordinates build_grid(int nx, int ny, double y_max, double stretch);
GridCoordinates build_grid(const GridSpec& spec);

/// Finite-difference weights for derivatives 0..max_order at z on nodes xs.
std::vector<std::vector<double>> fornberg_weights(double z, std::span<const double> xs, int max_order);

class Grid;
using GridPtr = std::shared_ptr<const Grid>;

class Grid {
public:
    static GridPtr make(const GridSpec& spec);

    const GridSpec& spec() const { return spec_; }
    int nx() const { return spec_.nx; }
    int ny() const { return spec_.ny; }
    std::size_t size() const { return static_cast<std::size_t>(spec_.nx) * spec_.ny; }
    double hx() const { return hx_; }

    const std::vector<double>& x() const { return coords_.x; }
    const std::vector<double>& y() const { return coords_.y; }
    double wx() const { return coords_.wx.front(); }
    const std::vector<double>& wy() const { return coords_.wy; }
    /// phi(y) = y/(1+y), zero at the wall row.
    const std::vector<double>& phi() const { return phi_; }

    /// Three-point first-derivative stencils (one-sided at both ends).
    const std::vector<std::array<double, 3>>& dy_weights() const { return dy_w_; }
    /// Second derivative: three-point interior, four-point one-sided at the ends.
    const std::vector<std::array<double, 4>>& dyy_weights() const { return dyy_w_; }
    /// Dense periodic spectral differentiation matrix (only for XScheme::spectral).
    const std::vector<double>& spectral_dx() const { return spec_dx_; }
    double min_dy() const { return coords_.y[1] - coords_.y[0]; }

    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * spec_.ny + j; }

private:
    explicit Grid(const GridSpec& spec);

    GridSpec spec_;
    GridCoordinates coords_;
    std::vector<double> phi_;
    std::vector<std::array<double, 3>> dy_w_;
    std::vector<std::array<double, 4>> dyy_w_;
    std::vector<double> spec_dx_;
    double hx_ = 0.0;
};

/// Scalar field stored x-major: value(i, j) at index i*ny + j, so y-lines are contiguous.
class Field {
public:
    Field() = default;
    explicit Field(GridPtr grid, double fill = 0.0);
    static Field from_function(GridPtr grid, const std::function<double(double, double)>& f);
    static Field from_profile(GridPtr grid, const std::function<double(double)>& f);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    bool empty() const { return !grid_; }
    int nx() const { return grid_->nx(); }
    int ny() const { return grid_->ny(); }
    std::size_t size() const { return data_.size(); }

    double& operator()(int i, int j) { return data_[grid_->idx(i, j)]; }
    double operator()(int i, int j) const { return data_[grid_->idx(i, j)]; }
    double& operator[](std::size_t k) { return data_[k]; }
    double operator[](std::size_t k) const { return data_[k]; }

    std::vector<double>& values() { return data_; }
    const std::vector<double>& values() const { return data_; }
    std::span<double> line(int i) { return {data_.data() + grid_->idx(i, 0), static_cast<std::size_t>(ny())}; }
    std::span<const double> line(int i) const {
        return {data_.data() + grid_->idx(i, 0), static_cast<std::size_t>(ny())};
    }

    bool all_finite() const;
    double max_abs() const;

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(const Field& o);
    Field& operator/=(const Field& o);
    Field& operator+=(double c);
    Field& operator-=(double c);
    Field& operator*=(double c);
    Field& operator/=(double c);

private:
    GridPtr grid_;
    std::vector<double> data_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(Field a, const Field& b);
Field operator/(Field a, const Field& b);
Field operator+(Field a, double c);
Field operator-(Field a, double c);
Field operator*(Field a, double c);
Field operator/(Field a, double c);
Field operator+(double c, Field a);
Field operator-(double c, Field a);
Field operator*(double c, Field a);
Field operator/(double c, Field a);
Field operator-(Field a);

/// Element-wise a*x + y, in place on y.
void axpy(double a, const Field& x, Field& y);

/// Rows j in [j0, j1] set to zero.
Field zero_rows(Field f, int j0, int j1);

}  // namespace blmhd
