/// @file sources.hpp
/// @brief Compatibility sources r1, r2, r_u, r_h built from initial data.
#pragma once

#include "blmhd/dynamics.hpp"

namespace blmhd {

/// Levels i = 0..m-1 of d_t^i (d_x rho, d_y rho, d_x u1, d_x h1) at t = 0,
/// bootstrapped through the unregularized equations (eps = 0, no sources).
/// Only mu and kappa of `physics` are used.
SourceBundle bootstrap_time_derivatives(const Field& rho0, const Field& u10, const Field& h10, int m,
                                        const Physics& physics);
SourceBundle bootstrap_time_derivatives(const State& initial, int m);

/// r(t) = sum_{i<m} t^i/i! level_i.
SourceTerms<Field> assemble_sources(const SourceBundle& b, double t);

/// Taylor coefficients of r(t + s) in s up to `order`.
SourceTerms<Jet> assemble_source_jet(const SourceBundle& b, double t, int order);

}  // namespace blmhd
