#include "blmhd/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace blmhd {

void GridSpec::validate() const {
    if (nx < 8) throw std::invalid_argument("grid.nx must be >= 8");
    if (ny < 8) throw std::invalid_argument("grid.ny must be >= 8");
    if (!(y_max >= 10.0) || !std::isfinite(y_max)) throw std::invalid_argument("grid.y_max must be >= 10");
    if (!(stretch >= 0.0) || !std::isfinite(stretch)) throw std::invalid_argument("grid.stretch must be >= 0");
}

std::vector<double> y_coordinates(int ny, double y_max, double stretch) {
    if (ny < 2) throw std::invalid_argument("grid needs at least two y points");
    if (!(y_max > 0.0) || !std::isfinite(y_max)) throw std::invalid_argument("y_max must be positive");
    if (!(stretch >= 0.0) || !std::isfinite(stretch)) throw std::invalid_argument("stretch must be >= 0");
    std::vector<double> y(ny);
    const double n1 = ny - 1;
    for (int j = 0; j < ny; ++j) {
        if (stretch == 0.0)
            y[j] = y_max * j / n1;
        else
            y[j] = y_max * std::expm1(stretch * j / n1) / std::expm1(stretch);
    }
    y.front() = 0.0;
    y.back() = y_max;
    for (int j = 1; j < ny; ++j)
        if (!(y[j] > y[j - 1])) throw std::invalid_argument("y grid is not strictly increasing");
    return y;
}

GridCoordinates build_grid(int nx, int ny, double y_max, double stretch) {
    if (nx < 1) throw std::invalid_argument("grid needs at least one x point");
    GridCoordinates c;
    c.y = y_coordinates(ny, y_max, stretch);
    c.x.resize(nx);
    const double h = 2.0 * std::numbers::pi / nx;
    for (int i = 0; i < nx; ++i) c.x[i] = h * i;
    c.wx.assign(nx, h);
    c.wy.assign(ny, 0.0);
    for (int j = 0; j + 1 < ny; ++j) {
        const double d = 0.5 * (c.y[j + 1] - c.y[j]);
        c.wy[j] += d;
        c.wy[j + 1] += d;
    }
    return c;
}

GridCoordinates build_grid(const GridSpec& spec) {
    spec.validate();
    return build_grid(spec.nx, spec.ny, spec.y_max, spec.stretch);
}

std::vector<std::vector<double>> fornberg_weights(double z, std::span<const double> xs, int m) {
    const int n = static_cast<int>(xs.size()) - 1;
    std::vector<std::vector<double>> c(m + 1, std::vector<double>(n + 1, 0.0));
    double c1 = 1.0;
    double c4 = xs[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = xs[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

GridPtr Grid::make(const GridSpec& spec) { return GridPtr(new Grid(spec)); }

Grid::Grid(const GridSpec& spec) : spec_(spec), coords_(build_grid(spec)) {
    const int ny = spec_.ny;
    const auto& y = coords_.y;
    hx_ = coords_.wx.front();
    phi_.resize(ny);
    for (int j = 0; j < ny; ++j) phi_[j] = y[j] / (1.0 + y[j]);

    dy_w_.resize(ny);
    dyy_w_.resize(ny);
    for (int j = 0; j < ny; ++j) {
        int s = std::clamp(j - 1, 0, ny - 3);
        const double pts3[3] = {y[s], y[s + 1], y[s + 2]};
        auto w = fornberg_weights(y[j], pts3, 2);
        dy_w_[j] = {w[1][0], w[1][1], w[1][2]};
        if (j == 0 || j == ny - 1) {
            const int s4 = (j == 0) ? 0 : ny - 4;
            const double pts4[4] = {y[s4], y[s4 + 1], y[s4 + 2], y[s4 + 3]};
            auto w4 = fornberg_weights(y[j], pts4, 2);
            dyy_w_[j] = {w4[2][0], w4[2][1], w4[2][2], w4[2][3]};
        } else {
            dyy_w_[j] = {w[2][0], w[2][1], w[2][2], 0.0};
        }
    }

    if (spec_.x_scheme == XScheme::spectral) {
        const int n = spec_.nx;
        spec_dx_.assign(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                if (i == k) continue;
                const double d = (i - k) * hx_ / 2.0;
                const double sgn = ((i - k) % 2 == 0) ? 1.0 : -1.0;
                // Even n: 0.5 (-1)^(i-k) cot(h(i-k)/2); odd n: cosec instead.
                spec_dx_[static_cast<std::size_t>(i) * n + k] =
                    (n % 2 == 0) ? 0.5 * sgn / std::tan(d) : 0.5 * sgn / std::sin(d);
            }
    }
}

Field::Field(GridPtr grid, double fill) : grid_(std::move(grid)), data_(grid_->size(), fill) {}

Field Field::from_function(GridPtr grid, const std::function<double(double, double)>& f) {
    Field out(grid);
    const auto& x = grid->x();
    const auto& y = grid->y();
    for (int i = 0; i < grid->nx(); ++i)
        for (int j = 0; j < grid->ny(); ++j) out(i, j) = f(x[i], y[j]);
    return out;
}

Field Field::from_profile(GridPtr grid, const std::function<double(double)>& f) {
    Field out(grid);
    const auto& y = grid->y();
    std::vector<double> p(grid->ny());
    for (int j = 0; j < grid->ny(); ++j) p[j] = f(y[j]);
    for (int i = 0; i < grid->nx(); ++i)
        for (int j = 0; j < grid->ny(); ++j) out(i, j) = p[j];
    return out;
}

bool Field::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double Field::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

namespace {
void check_same(const Field& a, const Field& b) {
    if (a.size() != b.size()) throw std::invalid_argument("field shape mismatch");
}
}  // namespace

Field& Field::operator+=(const Field& o) {
    check_same(*this, o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}
Field& Field::operator-=(const Field& o) {
    check_same(*this, o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}
Field& Field::operator*=(const Field& o) {
    check_same(*this, o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] *= o.data_[k];
    return *this;
}
Field& Field::operator/=(const Field& o) {
    check_same(*this, o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] /= o.data_[k];
    return *this;
}
Field& Field::operator+=(double c) {
    for (double& v : data_) v += c;
    return *this;
}
Field& Field::operator-=(double c) {
    for (double& v : data_) v -= c;
    return *this;
}
Field& Field::operator*=(double c) {
    for (double& v : data_) v *= c;
    return *this;
}
Field& Field::operator/=(double c) {
    for (double& v : data_) v /= c;
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(Field a, const Field& b) { return a *= b; }
Field operator/(Field a, const Field& b) { return a /= b; }
Field operator+(Field a, double c) { return a += c; }
Field operator-(Field a, double c) { return a -= c; }
Field operator*(Field a, double c) { return a *= c; }
Field operator/(Field a, double c) { return a /= c; }
Field operator+(double c, Field a) { return a += c; }
Field operator-(double c, Field a) {
    for (double& v : a.values()) v = c - v;
    return a;
}
Field operator*(double c, Field a) { return a *= c; }
Field operator/(double c, Field a) {
    for (double& v : a.values()) v = c / v;
    return a;
}
Field operator-(Field a) {
    for (double& v : a.values()) v = -v;
    return a;
}

void axpy(double a, const Field& x, Field& y) {
    check_same(x, y);
    auto& yv = y.values();
    const auto& xv = x.values();
    for (std::size_t k = 0; k < yv.size(); ++k) yv[k] += a * xv[k];
}

Field zero_rows(Field f, int j0, int j1) {
    for (int i = 0; i < f.nx(); ++i)
        for (int j = std::max(j0, 0); j <= std::min(j1, f.ny() - 1); ++j) f(i, j) = 0.0;
    return f;
}

}  // namespace blmhd
