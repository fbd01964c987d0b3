/// @file norms.hpp
/// @brief Weighted Lebesgue norms, conormal Sobolev norms and the B-norms of the data.
#pragma once

#include "blmhd/dynamics.hpp"

#include <limits>

namespace blmhd {

enum class NormMode {
    full,               ///< all |a| <= m
    tangential_capped,  ///< |a| <= m and |a1| <= m-1
    tangential_only     ///< z2_count = 0
};

struct NormSpec {
    int m = 2;
    double l = 0.0;
    NormMode mode = NormMode::full;
};

const char* mode_name(NormMode m);

/// sqrt(sum wx wy_j (1+y_j)^(2l) f^2)
double weighted_l2(const Field& f, double l);
double weighted_l2_sq(const Field& f, double l);
/// max (1+y)^l |f|, optionally only over rows with y <= y_limit.
double weighted_linf(const Field& f, double l, double y_limit = std::numeric_limits<double>::infinity());

/// Index set in canonical order: by order, then t, then x.
std::vector<MultiIndex> index_set(const NormSpec& spec);
std::vector<MultiIndex> tangential_indices(int order);

/// A time stack [f, d_t f, ...] measured in H^m_l. Throws MissingPdeContext when too short.
double conormal_norm_sq(const std::vector<Field>& stack, const NormSpec& spec);
double conormal_norm(const std::vector<Field>& stack, const NormSpec& spec);
/// Field with no time dependence: every t-derivative is zero.
double conormal_norm_static(const Field& f, const NormSpec& spec);
/// Plain field: throws MissingPdeContext if the index set contains a t-derivative.
double conormal_norm(const Field& f, const NormSpec& spec);
double conormal_norm(const State& s, FieldId which, const NormSpec& spec, const PdeContext& ctx = {});

/// sum over the index set of ||Z^a f||^2_{L^inf_l}
double conormal_linf_sq(const std::vector<Field>& stack, const NormSpec& spec,
                        double y_limit = std::numeric_limits<double>::infinity());

struct BNorms {
    double b_bar = 0.0;
    double b_hat = 0.0;
    /// b_hat with the H^{1,inf}_0 group restricted to y <= 5.
    double b_hat_restricted = 0.0;
};

/// Physical (rho, u1, h1); time derivatives through the unregularized equations.
BNorms b_norms(const Field& rho, const Field& u1, const Field& h1, int m, double l, const Physics& physics);

}  // namespace blmhd
