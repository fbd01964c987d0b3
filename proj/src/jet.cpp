#include "blmhd/jet.hpp"

#include <algorithm>

namespace blmhd {

Field Jet::derivative(int k) const {
    if (k > order()) return Field(grid_ptr());
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return c_[k] * f;
}

Jet Jet::truncated(int order) const {
    std::vector<Field> c(c_.begin(), c_.begin() + std::min<std::size_t>(c_.size(), order + 1));
    return Jet(std::move(c));
}

Jet& Jet::operator+=(const Jet& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Field(o.grid_ptr()));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Field(o.grid_ptr()));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

Jet& Jet::operator*=(double a) {
    for (auto& f : c_) f *= a;
    return *this;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator*(Jet a, double s) { return a *= s; }
Jet operator*(double s, Jet a) { return a *= s; }
Jet operator+(Jet a, double s) {
    a[0] += s;
    return a;
}
Jet operator-(Jet a) { return a *= -1.0; }

Jet operator*(const Jet& a, const Jet& b) {
    const int n = std::max(a.order(), b.order());
    std::vector<Field> c;
    c.reserve(n + 1);
    for (int k = 0; k <= n; ++k) {
        Field acc(a.grid_ptr());
        for (int i = 0; i <= k; ++i) {
            const int j = k - i;
            if (i > a.order() || j > b.order()) continue;
            const auto& ai = a[i].values();
            const auto& bj = b[j].values();
            auto& o = acc.values();
            for (std::size_t p = 0; p < o.size(); ++p) o[p] += ai[p] * bj[p];
        }
        c.push_back(std::move(acc));
    }
    return Jet(std::move(c));
}

Jet operator/(const Jet& a, const Jet& b) {
    const int n = std::max(a.order(), b.order());
    std::vector<Field> q;
    q.reserve(n + 1);
    for (int k = 0; k <= n; ++k) {
        Field r = (k <= a.order()) ? a[k] : Field(a.grid_ptr());
        for (int i = 1; i <= k && i <= b.order(); ++i) {
            const auto& bi = b[i].values();
            const auto& qk = q[k - i].values();
            auto& o = r.values();
            for (std::size_t p = 0; p < o.size(); ++p) o[p] -= bi[p] * qk[p];
        }
        r /= b[0];
        q.push_back(std::move(r));
    }
    return Jet(std::move(q));
}

Jet time_derivative(const Jet& a) {
    if (a.order() == 0) return Jet(Field(a.grid_ptr()));
    std::vector<Field> c;
    for (int k = 0; k < a.order(); ++k) c.push_back(a[k + 1] * static_cast<double>(k + 1));
    return Jet(std::move(c));
}

namespace {
template <class Op>
Jet map(const Jet& f, Op op) {
    std::vector<Field> c;
    c.reserve(f.order() + 1);
    for (const auto& x : f.coeffs()) c.push_back(op(x));
    return Jet(std::move(c));
}
}  // namespace

Jet dx(const Jet& f) { return map(f, [](const Field& x) { return dx(x); }); }
Jet dxx(const Jet& f) { return map(f, [](const Field& x) { return dxx(x); }); }
Jet dy(const Jet& f) { return map(f, [](const Field& x) { return dy(x); }); }
Jet dyy(const Jet& f) { return map(f, [](const Field& x) { return dyy(x); }); }
Jet dyy_neumann(const Jet& f) { return map(f, [](const Field& x) { return dyy_neumann(x); }); }
Jet z2(const Jet& f) { return map(f, [](const Field& x) { return z2(x); }); }
Jet cumint_y(const Jet& f) { return map(f, [](const Field& x) { return cumint_y(x); }); }
Jet scale_rows(Jet f, const std::vector<double>& p) {
    for (auto& x : f.coeffs()) x = scale_rows(std::move(x), p);
    return f;
}
Jet zero_rows(Jet f, int j0, int j1) {
    for (auto& x : f.coeffs()) x = zero_rows(std::move(x), j0, j1);
    return f;
}

}  // namespace blmhd
