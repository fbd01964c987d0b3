/// @file jet.hpp
/// @brief Truncated Taylor series in time with Field coefficients.
///
/// A Jet holds c_0..c_K with f(t0 + s) = sum_k c_k s^k. Missing coefficients
/// of the shorter operand count as zero and products are truncated at the
/// longer length, so coefficients up to the smallest valid order stay exact.
#pragma once

#include "blmhd/ops.hpp"

#include <vector>

namespace blmhd {

class Jet {
public:
    Jet() = default;
    explicit Jet(Field c0) { c_.push_back(std::move(c0)); }
    explicit Jet(std::vector<Field> coeffs) : c_(std::move(coeffs)) {}

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Field& value() const { return c_.front(); }
    const Field& operator[](int k) const { return c_[k]; }
    Field& operator[](int k) { return c_[k]; }
    const std::vector<Field>& coeffs() const { return c_; }
    std::vector<Field>& coeffs() { return c_; }
    const GridPtr& grid_ptr() const { return c_.front().grid_ptr(); }

    /// k-th time derivative at s = 0, i.e. k! c_k (zero past the stored order).
    Field derivative(int k) const;
    Jet truncated(int order) const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(double a);

private:
    std::vector<Field> c_;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator*(Jet a, double s);
Jet operator*(double s, Jet a);
Jet operator+(Jet a, double s);
Jet operator-(Jet a);

/// d/ds of the series: order drops by one.
Jet time_derivative(const Jet& a);

Jet dx(const Jet& f);
Jet dxx(const Jet& f);
Jet dy(const Jet& f);
Jet dyy(const Jet& f);
Jet dyy_neumann(const Jet& f);
Jet z2(const Jet& f);
Jet cumint_y(const Jet& f);
Jet scale_rows(Jet f, const std::vector<double>& p);
Jet zero_rows(Jet f, int j0, int j1);

/// Field-or-Jet helpers for code templated over both.
inline Field lift(const Field& f, const Field&) { return f; }
inline Jet lift(const Field& f, const Jet&) { return Jet(f); }
inline const Field& value_of(const Field& f) { return f; }
inline const Field& value_of(const Jet& f) { return f.value(); }

}  // namespace blmhd
