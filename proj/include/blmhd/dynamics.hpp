/// @file dynamics.hpp
/// @brief Right-hand side of the shifted regularized system and time
/// derivatives obtained by substituting it (Taylor-mode jets).
#pragma once

#include "blmhd/state.hpp"

namespace blmhd {

template <class F>
struct SourceTerms {
    F r1, r2, ru, rh;
};

enum class TermSet {
    all,
    /// Drops eps d_xx, eps/kappa d_yy of rho/h and eps d_xx + mu d_yy of u,
    /// which the IMEX solver handles implicitly.
    explicit_only
};

/// d_t (rho, u, h). The momentum row is divided by rho. Dirichlet rows are zero.
template <class F>
Triple<F> tendency(const Triple<F>& w, const Physics& p, const SourceTerms<F>* src, const Triple<F>* forcing,
                   TermSet terms = TermSet::all);

extern template Triple<Field> tendency(const Triple<Field>&, const Physics&, const SourceTerms<Field>*,
                                       const Triple<Field>*, TermSet);
extern template Triple<Jet> tendency(const Triple<Jet>&, const Physics&, const SourceTerms<Jet>*,
                                     const Triple<Jet>*, TermSet);

/// Taylor jets of all fields at state.time, up to the given order.
struct SolutionJet {
    Jet rho, u, h, v, g, psi;
    const Jet& get(FieldId id) const;
};

SolutionJet solution_jet(const State& s, int order, const PdeContext& ctx = {});

/// d_t of one field from the equations (no time differencing).
Field time_derivative_via_pde(const State& s, FieldId which, const PdeContext& ctx = {});

/// [f, d_t f, ..., d_t^order f] at state.time.
std::vector<Field> time_stack(const State& s, FieldId which, int order, const PdeContext& ctx = {});
std::vector<Field> time_stack(const SolutionJet& jet, FieldId which);
std::vector<Field> time_stack(const Jet& jet);

/// Conormal derivative using a time stack for the t part.
Field zderiv(const std::vector<Field>& stack, const MultiIndex& a);
Field zderiv(const State& s, FieldId which, const MultiIndex& a, const PdeContext& ctx = {});

/// Throws DensityGuard when rho + 1 < 0.1 anywhere.
void check_density(const Field& rho_shift);

}  // namespace blmhd
