#include "blmhd/dynamics.hpp"

#include "blmhd/sources.hpp"

#include <cmath>
#include <optional>

namespace blmhd {

const char* field_name(FieldId id) {
    switch (id) {
        case FieldId::rho: return "rho";
        case FieldId::u: return "u";
        case FieldId::h: return "h";
        case FieldId::v: return "v";
        case FieldId::g: return "g";
        case FieldId::psi: return "psi";
    }
    return "?";
}

Field background(const GridPtr& grid) {
    return Field::from_profile(grid, [](double y) { return std::exp(-y); });
}

void derive_secondary(State& s) {
    s.v = -cumint_y(dx(s.u));
    s.g = -cumint_y(dx(s.h));
    s.psi = cumint_y(s.h);
}

State derived(State s) {
    derive_secondary(s);
    return s;
}

State make_state(Field rho, Field u, Field h, Physics physics, double time, double delta0) {
    State s;
    s.rho = std::move(rho);
    s.u = std::move(u);
    s.h = std::move(h);
    s.physics = physics;
    s.time = time;
    s.delta0 = delta0;
    derive_secondary(s);
    return s;
}

State state_from_physical(const Field& rho, const Field& u1, const Field& h1, Physics physics, double delta0) {
    Field bg = background(rho.grid_ptr());
    return make_state(rho - 1.0, u1 - 1.0 + bg, h1 - 1.0, physics, 0.0, delta0);
}

State state_from_physical(const GridPtr& grid, const InitialData& d, Physics physics, double delta0) {
    return state_from_physical(Field::from_function(grid, d.rho), Field::from_function(grid, d.u1),
                               Field::from_function(grid, d.h1), physics, delta0);
}

Triple<Field> physical_fields(const State& s) {
    Field bg = background(s.grid_ptr());
    return {s.rho + 1.0, s.u + 1.0 - bg, s.h + 1.0};
}

std::vector<Triple<Field>> Forcing::taylor(const GridPtr& grid, double t, int order) const {
    if (order > 0) throw std::invalid_argument("forcing time derivatives are not available");
    return {at(grid, t)};
}

void check_density(const Field& rho_shift) {
    for (double r : rho_shift.values())
        if (!(r + 1.0 >= 0.1)) throw DensityGuard("density below 0.1");
}

template <class F>
Triple<F> tendency(const Triple<F>& w, const Physics& p, const SourceTerms<F>* src, const Triple<F>* forcing,
                   TermSet terms) {
    const GridPtr& gp = value_of(w.rho).grid_ptr();
    const int ny = gp->ny();
    const Field bg = background(gp);
    const F& model = w.rho;

    const F v = -cumint_y(dx(w.u));
    const F g = -cumint_y(dx(w.h));
    const F rho = w.rho + 1.0;
    const F u1 = w.u + lift(1.0 - bg, model);
    const F hp1 = w.h + 1.0;
    const F shear = dy(w.u) + lift(bg, model);

    const F rx = dx(w.rho), ry = dy(w.rho);
    const F ux = dx(w.u), uy = dy(w.u);
    const F hx = dx(w.h), hy = dy(w.h);
    const bool all = terms == TermSet::all;

    F trho = -(u1 * rx) - v * ry;
    if (all) trho = trho + p.eps * dxx(w.rho) + p.eps * dyy_neumann(w.rho);
    if (src) trho = trho - p.eps * (dx(src->r1) + dy(src->r2));
    if (forcing) trho = trho + forcing->rho;

    F th = -(u1 * hx) - v * hy + hp1 * ux + g * shear;
    if (all) th = th + p.eps * dxx(w.h) + p.kappa * dyy_neumann(w.h);
    if (src) th = th - p.eps * dx(src->rh);
    if (forcing) th = th + forcing->h;

    F mom = -(rho * u1 * ux) - rho * v * uy - rho * v * lift(bg, model) + hp1 * hx + g * hy +
            lift((-p.mu) * dyy(bg), model);
    if (all) mom = mom + p.eps * dxx(w.u) + p.mu * dyy(w.u);
    if (src) mom = mom - p.eps * dx(src->ru);
    if (forcing) mom = mom + forcing->u;
    F tu = mom / rho;

    tu = zero_rows(std::move(tu), 0, 0);
    return {zero_rows(std::move(trho), ny - 1, ny - 1), zero_rows(std::move(tu), ny - 1, ny - 1),
            zero_rows(std::move(th), ny - 1, ny - 1)};
}

template Triple<Field> tendency(const Triple<Field>&, const Physics&, const SourceTerms<Field>*,
                                const Triple<Field>*, TermSet);
template Triple<Jet> tendency(const Triple<Jet>&, const Physics&, const SourceTerms<Jet>*, const Triple<Jet>*,
                              TermSet);

const Jet& SolutionJet::get(FieldId id) const {
    switch (id) {
        case FieldId::rho: return rho;
        case FieldId::u: return u;
        case FieldId::h: return h;
        case FieldId::v: return v;
        case FieldId::g: return g;
        case FieldId::psi: return psi;
    }
    return rho;
}

SolutionJet solution_jet(const State& s, int order, const PdeContext& ctx) {
    if (order < 0) throw std::invalid_argument("negative jet order");
    check_density(s.rho);
    Triple<Jet> w{Jet(s.rho), Jet(s.u), Jet(s.h)};
    std::vector<Triple<Field>> fco;
    if (ctx.forcing && order > 0) fco = ctx.forcing->taylor(s.grid_ptr(), s.time, order - 1);
    for (int k = 0; k < order; ++k) {
        std::optional<SourceTerms<Jet>> src;
        if (ctx.sources && !ctx.sources->empty()) src = assemble_source_jet(*ctx.sources, s.time, k);
        std::optional<Triple<Jet>> frc;
        if (ctx.forcing) {
            frc = Triple<Jet>{Jet(std::vector<Field>{}), Jet(std::vector<Field>{}), Jet(std::vector<Field>{})};
            for (int q = 0; q <= k; ++q) {
                frc->rho.coeffs().push_back(fco[q].rho);
                frc->u.coeffs().push_back(fco[q].u);
                frc->h.coeffs().push_back(fco[q].h);
            }
        }
        Triple<Jet> t = tendency(w, s.physics, src ? &*src : nullptr, frc ? &*frc : nullptr, TermSet::all);
        const double inv = 1.0 / (k + 1);
        w.rho.coeffs().push_back(t.rho[k] * inv);
        w.u.coeffs().push_back(t.u[k] * inv);
        w.h.coeffs().push_back(t.h[k] * inv);
    }
    SolutionJet out;
    out.v = -cumint_y(dx(w.u));
    out.g = -cumint_y(dx(w.h));
    out.psi = cumint_y(w.h);
    out.rho = std::move(w.rho);
    out.u = std::move(w.u);
    out.h = std::move(w.h);
    return out;
}

Field time_derivative_via_pde(const State& s, FieldId which, const PdeContext& ctx) {
    return solution_jet(s, 1, ctx).get(which).derivative(1);
}

std::vector<Field> time_stack(const Jet& jet) {
    std::vector<Field> out;
    for (int k = 0; k <= jet.order(); ++k) out.push_back(jet.derivative(k));
    return out;
}

std::vector<Field> time_stack(const SolutionJet& jet, FieldId which) { return time_stack(jet.get(which)); }

std::vector<Field> time_stack(const State& s, FieldId which, int order, const PdeContext& ctx) {
    return time_stack(solution_jet(s, order, ctx), which);
}

Field zderiv(const std::vector<Field>& stack, const MultiIndex& a) {
    if (a.t_count < 0) throw std::invalid_argument("negative multi-index count");
    if (a.t_count >= static_cast<int>(stack.size()))
        throw MissingPdeContext("time stack too short for " + a.label());
    return zderiv_spatial(stack[a.t_count], a.x_count, a.z2_count);
}

Field zderiv(const State& s, FieldId which, const MultiIndex& a, const PdeContext& ctx) {
    if (a.t_count == 0) {
        const Field* f = nullptr;
        switch (which) {
            case FieldId::rho: f = &s.rho; break;
            case FieldId::u: f = &s.u; break;
            case FieldId::h: f = &s.h; break;
            case FieldId::v: f = &s.v; break;
            case FieldId::g: f = &s.g; break;
            case FieldId::psi: f = &s.psi; break;
        }
        return zderiv_spatial(*f, a.x_count, a.z2_count);
    }
    return zderiv(time_stack(s, which, a.t_count, ctx), a);
}

}  // namespace blmhd
