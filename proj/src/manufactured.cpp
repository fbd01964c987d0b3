#include "blmhd/manufactured.hpp"

#include "blmhd/inequalities.hpp"

#include <cmath>
#include <numbers>

namespace blmhd {

MmsPoint GaussianManufactured::eval(double t, double x, double y) const {
    MmsPoint p;
    const double G = std::exp(-y * y);
    const double et = std::exp(-t);

    p.r = a_ * et * G * std::cos(x);
    p.rt = -p.r;
    p.rx = -a_ * et * G * std::sin(x);
    p.ry = -2.0 * y * p.r;
    p.rxx = -p.r;
    p.ryy = (4.0 * y * y - 2.0) * p.r;

    const double S = std::sin(x + t), C = std::cos(x + t);
    const double q = y * G, q1 = (1.0 - 2.0 * y * y) * G, q2 = (4.0 * y * y * y - 6.0 * y) * G;
    p.u = b_ * q * S;
    p.ut = b_ * q * C;
    p.ux = b_ * q * C;
    p.uy = b_ * q1 * S;
    p.uxx = -p.u;
    p.uyy = b_ * q2 * S;
    p.v = -b_ * C * 0.5 * (1.0 - G);

    const double s = std::sin(x - t), co = std::cos(x - t);
    p.h = c_ * G * s;
    p.ht = -c_ * G * co;
    p.hx = c_ * G * co;
    p.hy = -2.0 * y * p.h;
    p.hxx = -p.h;
    p.hyy = (4.0 * y * y - 2.0) * p.h;
    p.g = -c_ * co * 0.5 * std::sqrt(std::numbers::pi) * std::erf(y);
    return p;
}

MmsPoint EquilibriumManufactured::eval(double, double, double y) const {
    MmsPoint p;
    p.u = std::exp(-y);
    p.uy = -p.u;
    p.uyy = p.u;
    return p;
}

Triple<Field> ManufacturedForcing::at(const GridPtr& grid, double t) const {
    Triple<Field> f{Field(grid), Field(grid), Field(grid)};
    const auto& x = grid->x();
    const auto& y = grid->y();
    const double eps = p_.eps, mu = p_.mu, kap = p_.kappa;
    for (int i = 0; i < grid->nx(); ++i)
        for (int j = 0; j < grid->ny(); ++j) {
            const MmsPoint q = ms_->eval(t, x[i], y[j]);
            const double ey = std::exp(-y[j]);
            const double u1 = q.u + 1.0 - ey;
            const double rho = q.r + 1.0;
            f.rho(i, j) = q.rt + u1 * q.rx + q.v * q.ry - eps * (q.rxx + q.ryy);
            f.u(i, j) = rho * q.ut + rho * u1 * q.ux + rho * q.v * q.uy + rho * q.v * ey - eps * q.uxx - mu * q.uyy -
                        (q.h + 1.0) * q.hx - q.g * q.hy + mu * ey;
            f.h(i, j) = q.ht + u1 * q.hx + q.v * q.hy - eps * q.hxx - kap * q.hyy - (q.h + 1.0) * q.ux -
                        q.g * (q.uy + ey);
        }
    return f;
}

State manufactured_state(const GridPtr& grid, const ManufacturedSolution& ms, double t, const Physics& p) {
    Field r(grid), u(grid), h(grid);
    const auto& x = grid->x();
    const auto& y = grid->y();
    for (int i = 0; i < grid->nx(); ++i)
        for (int j = 0; j < grid->ny(); ++j) {
            const MmsPoint q = ms.eval(t, x[i], y[j]);
            r(i, j) = q.r;
            u(i, j) = q.u;
            h(i, j) = q.h;
        }
    return make_state(std::move(r), std::move(u), std::move(h), p, t);
}

Triple<Field> pde_residual(const GridPtr& grid, const ManufacturedSolution& ms, double t, const Physics& p) {
    const auto& x = grid->x();
    const int ny = grid->ny();
    for (int i = 0; i < grid->nx(); ++i) {
        const MmsPoint q = ms.eval(t, x[i], 0.0);
        if (std::abs(q.ry) > 1e-12 || std::abs(q.ut) > 1e-12 || std::abs(q.hy) > 1e-12 || std::abs(q.v) > 1e-12 ||
            std::abs(q.g) > 1e-12)
            throw PreconditionError("manufactured fields violate the wall conditions");
    }
    const State s = manufactured_state(grid, ms, t, p);
    const std::shared_ptr<const ManufacturedSolution> keep(&ms, [](const ManufacturedSolution*) {});
    const ManufacturedForcing forcing(keep, p);
    const Triple<Field> F = forcing.at(grid, t);
    const Triple<Field> T = tendency(Triple<Field>{s.rho, s.u, s.h}, p, static_cast<const SourceTerms<Field>*>(nullptr), &F, TermSet::all);

    Triple<Field> dt{Field(grid), Field(grid), Field(grid)};
    const auto& y = grid->y();
    for (int i = 0; i < grid->nx(); ++i)
        for (int j = 0; j < ny; ++j) {
            const MmsPoint q = ms.eval(t, x[i], y[j]);
            dt.rho(i, j) = q.rt;
            dt.u(i, j) = q.ut;
            dt.h(i, j) = q.ht;
        }
    Triple<Field> r{dt.rho - T.rho, (s.rho + 1.0) * (dt.u - T.u), dt.h - T.h};
    r.rho = zero_rows(std::move(r.rho), ny - 1, ny - 1);
    r.u = zero_rows(zero_rows(std::move(r.u), 0, 0), ny - 1, ny - 1);
    r.h = zero_rows(std::move(r.h), ny - 1, ny - 1);
    return r;
}

double manufactured_error(const State& s, const ManufacturedSolution& ms) {
    const State e = manufactured_state(s.grid_ptr(), ms, s.time, s.physics);
    const double a = weighted_l2_sq(s.rho - e.rho, 0.0);
    const double b = weighted_l2_sq(s.u - e.u, 0.0);
    const double c = weighted_l2_sq(s.h - e.h, 0.0);
    return std::sqrt(a + b + c);
}

}  // namespace blmhd
