#include "blmhd/ops.hpp"

#include <algorithm>
#include <cmath>

namespace blmhd {

std::string MultiIndex::label() const {
    return "t" + std::to_string(t_count) + "x" + std::to_string(x_count) + "z" + std::to_string(z2_count);
}

Field dx(const Field& f) {
    const Grid& g = f.grid();
    const int nx = g.nx(), ny = g.ny();
    Field out(f.grid_ptr());
    if (g.spec().x_scheme == XScheme::spectral) {
        const auto& D = g.spectral_dx();
        for (int i = 0; i < nx; ++i) {
            auto o = out.line(i);
            for (int k = 0; k < nx; ++k) {
                const double d = D[static_cast<std::size_t>(i) * nx + k];
                if (d == 0.0) continue;
                auto src = f.line(k);
                for (int j = 0; j < ny; ++j) o[j] += d * src[j];
            }
        }
        return out;
    }
    const double c1 = 8.0 / (12.0 * g.hx()), c2 = 1.0 / (12.0 * g.hx());
    for (int i = 0; i < nx; ++i) {
        auto p1 = f.line((i + 1) % nx), m1 = f.line((i + nx - 1) % nx);
        auto p2 = f.line((i + 2) % nx), m2 = f.line((i + nx - 2) % nx);
        auto o = out.line(i);
        for (int j = 0; j < ny; ++j) o[j] = c1 * (p1[j] - m1[j]) - c2 * (p2[j] - m2[j]);
    }
    return out;
}

Field dxx(const Field& f) {
    const Grid& g = f.grid();
    const int nx = g.nx(), ny = g.ny();
    const double c = 1.0 / (g.hx() * g.hx());
    Field out(f.grid_ptr());
    for (int i = 0; i < nx; ++i) {
        auto p = f.line((i + 1) % nx), m = f.line((i + nx - 1) % nx), c0 = f.line(i);
        auto o = out.line(i);
        for (int j = 0; j < ny; ++j) o[j] = c * (p[j] - 2.0 * c0[j] + m[j]);
    }
    return out;
}

Field dy(const Field& f) {
    const Grid& g = f.grid();
    const int nx = g.nx(), ny = g.ny();
    const auto& w = g.dy_weights();
    Field out(f.grid_ptr());
    for (int i = 0; i < nx; ++i) {
        auto s = f.line(i);
        auto o = out.line(i);
        for (int j = 0; j < ny; ++j) {
            const int b = std::clamp(j - 1, 0, ny - 3);
            o[j] = w[j][0] * s[b] + w[j][1] * s[b + 1] + w[j][2] * s[b + 2];
        }
    }
    return out;
}

Field dyy(const Field& f) {
    const Grid& g = f.grid();
    const int nx = g.nx(), ny = g.ny();
    const auto& w = g.dyy_weights();
    Field out(f.grid_ptr());
    for (int i = 0; i < nx; ++i) {
        auto s = f.line(i);
        auto o = out.line(i);
        o[0] = w[0][0] * s[0] + w[0][1] * s[1] + w[0][2] * s[2] + w[0][3] * s[3];
        for (int j = 1; j < ny - 1; ++j) o[j] = w[j][0] * s[j - 1] + w[j][1] * s[j] + w[j][2] * s[j + 1];
        const int e = ny - 1;
        o[e] = w[e][0] * s[e - 3] + w[e][1] * s[e - 2] + w[e][2] * s[e - 1] + w[e][3] * s[e];
    }
    return out;
}

Field dyy_neumann(const Field& f) {
    Field out = dyy(f);
    const double y1 = f.grid().y()[1];
    const double c = 2.0 / (y1 * y1);
    for (int i = 0; i < f.nx(); ++i) {
        auto s = f.line(i);
        out(i, 0) = c * (s[1] - s[0]);
    }
    return out;
}

Field scale_rows(Field f, const std::vector<double>& p) {
    for (int i = 0; i < f.nx(); ++i) {
        auto o = f.line(i);
        for (int j = 0; j < f.ny(); ++j) o[j] *= p[j];
    }
    return f;
}

Field z2(const Field& f) { return scale_rows(dy(f), f.grid().phi()); }

Field cumint_y(const Field& f) {
    const Grid& g = f.grid();
    const auto& y = g.y();
    Field out(f.grid_ptr());
    for (int i = 0; i < g.nx(); ++i) {
        auto s = f.line(i);
        auto o = out.line(i);
        o[0] = 0.0;
        for (int j = 1; j < g.ny(); ++j) o[j] = o[j - 1] + 0.5 * (y[j] - y[j - 1]) * (s[j] + s[j - 1]);
    }
    return out;
}

Field zderiv_spatial(const Field& f, int x_count, int z2_count) {
    if (x_count < 0 || z2_count < 0) throw std::invalid_argument("negative multi-index count");
    Field out = f;
    for (int k = 0; k < x_count; ++k) out = dx(out);
    for (int k = 0; k < z2_count; ++k) out = z2(out);
    return out;
}

Field zderiv(const Field& f, const MultiIndex& a) {
    if (a.t_count < 0) throw std::invalid_argument("negative multi-index count");
    if (a.t_count > 0) throw MissingPdeContext("time derivative requested without a PDE context");
    return zderiv_spatial(f, a.x_count, a.z2_count);
}

}  // namespace blmhd
