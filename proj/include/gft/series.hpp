#ifndef GFT_SERIES_HPP
#define GFT_SERIES_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gft {

using Complex = std::complex<double>;

// Truncation order used when callers do not ask for something else.
inline constexpr int kDefaultOrder = 16;

namespace detail {

inline bool is_finite(Complex c) {
  return std::isfinite(c.real()) && std::isfinite(c.imag());
}

// Truncated Cauchy product of two coefficient vectors of equal length.
inline std::vector<Complex> mul_trunc(const std::vector<Complex>& a,
                                      const std::vector<Complex>& b) {
  std::vector<Complex> out(a.size());
  for (std::size_t n = 0; n < out.size(); ++n) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j <= n; ++j) acc += a[j] * b[n - j];
    out[n] = acc;
  }
  return out;
}

}  // namespace detail

// Truncated power series c0 + c1 z + ... + cN z^N. Coefficients are complex,
// the truncation order N is at least 1, and every coefficient is finite.
// Instances are immutable; operations return fresh values.
class TaylorSeries {
 public:
  explicit TaylorSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 2)
      throw std::invalid_argument("TaylorSeries: truncation order must be >= 1");
    for (const Complex& c : coeffs_)
      if (!detail::is_finite(c))
        throw std::invalid_argument("TaylorSeries: coefficients must be finite");
  }

  static TaylorSeries zero(int order) {
    return TaylorSeries(std::vector<Complex>(checked(order) + 1, 0.0));
  }

  static TaylorSeries constant(Complex value, int order) {
    std::vector<Complex> c(checked(order) + 1, 0.0);
    c[0] = value;
    return TaylorSeries(std::move(c));
  }

  // The series z.
  static TaylorSeries identity(int order) {
    std::vector<Complex> c(checked(order) + 1, 0.0);
    c[1] = 1.0;
    return TaylorSeries(std::move(c));
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }

  const std::vector<Complex>& coeffs() const { return coeffs_; }

  Complex coeff(int n) const {
    if (n < 0 || n > order())
      throw std::invalid_argument("TaylorSeries: coefficient index out of range");
    return coeffs_[static_cast<std::size_t>(n)];
  }

 private:
  static int checked(int order) {
    if (order < 1) throw std::invalid_argument("TaylorSeries: truncation order must be >= 1");
    return order;
  }

  std::vector<Complex> coeffs_;
};

namespace detail {

inline void require_same_order(const TaylorSeries& s, const TaylorSeries& t,
                               const char* op) {
  if (s.order() != t.order())
    throw std::invalid_argument(std::string(op) + ": operands must share a truncation order");
}

}  // namespace detail

inline TaylorSeries linear_combine(const TaylorSeries& s, const TaylorSeries& t,
                                   Complex ws, Complex wt) {
  detail::require_same_order(s, t, "linear_combine");
  std::vector<Complex> out(s.coeffs().size());
  for (std::size_t n = 0; n < out.size(); ++n)
    out[n] = ws * s.coeffs()[n] + wt * t.coeffs()[n];
  return TaylorSeries(std::move(out));
}

inline TaylorSeries multiply(const TaylorSeries& s, const TaylorSeries& t) {
  detail::require_same_order(s, t, "multiply");
  return TaylorSeries(detail::mul_trunc(s.coeffs(), t.coeffs()));
}

// outer(inner(z)) truncated at the shared order. The inner series must have
// zero constant term, otherwise the composition would shift every coefficient.
inline TaylorSeries compose(const TaylorSeries& outer, const TaylorSeries& inner) {
  detail::require_same_order(outer, inner, "compose");
  if (inner.coeff(0) != 0.0)
    throw std::invalid_argument("compose: inner series must have zero constant term");
  const int n = outer.order();
  // Horner: acc = c_n, then acc = acc * inner + c_k down to k = 0.
  std::vector<Complex> acc(static_cast<std::size_t>(n) + 1, 0.0);
  acc[0] = outer.coeff(n);
  for (int k = n - 1; k >= 0; --k) {
    acc = detail::mul_trunc(acc, inner.coeffs());
    acc[0] += outer.coeff(k);
  }
  return TaylorSeries(std::move(acc));
}

// Termwise derivative, padded with a trailing zero so the order is preserved.
inline TaylorSeries derive(const TaylorSeries& s) {
  std::vector<Complex> out(s.coeffs().size(), 0.0);
  for (int k = 1; k <= s.order(); ++k)
    out[static_cast<std::size_t>(k) - 1] = static_cast<double>(k) * s.coeff(k);
  return TaylorSeries(std::move(out));
}

inline Complex eval(const TaylorSeries& s, Complex z) {
  Complex acc = s.coeff(s.order());
  for (int k = s.order() - 1; k >= 0; --k) acc = acc * z + s.coeff(k);
  return acc;
}

// A series normalized to f(0) = 0, f'(0) = 1; the shape every univalent-class
// computation here starts from.
class NormalizedSeries {
 public:
  explicit NormalizedSeries(TaylorSeries s) : s_(std::move(s)) {
    if (s_.coeff(0) != 0.0 || s_.coeff(1) != 1.0)
      throw std::invalid_argument("NormalizedSeries: requires c0 = 0 and c1 = 1");
  }

  // Build z + tail[0] z^2 + tail[1] z^3 + ... padded to the requested order.
  // With order < 0 the order adapts to the tail (at least 1).
  static NormalizedSeries from_tail(std::span<const Complex> tail, int order = -1) {
    if (order < 0) order = static_cast<int>(tail.size()) + 1;
    if (order < 1) order = 1;
    if (static_cast<std::size_t>(order) < tail.size() + 1)
      throw std::invalid_argument("NormalizedSeries: tail longer than requested order");
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1, 0.0);
    c[1] = 1.0;
    for (std::size_t i = 0; i < tail.size(); ++i) c[i + 2] = tail[i];
    return NormalizedSeries(TaylorSeries(std::move(c)));
  }

  static NormalizedSeries identity(int order) {
    return NormalizedSeries(TaylorSeries::identity(order));
  }

  const TaylorSeries& series() const { return s_; }
  int order() const { return s_.order(); }
  Complex coeff(int n) const { return s_.coeff(n); }

 private:
  TaylorSeries s_;
};

// Multiplicative inverse 1/s truncated at the order of s; the constant term
// must be nonzero.
inline TaylorSeries reciprocal(const TaylorSeries& s) {
  if (s.coeff(0) == 0.0)
    throw std::invalid_argument("reciprocal: constant term must be nonzero");
  std::vector<Complex> r(s.coeffs().size(), 0.0);
  r[0] = 1.0 / s.coeff(0);
  for (int n = 1; n <= s.order(); ++n) {
    Complex acc = 0.0;
    for (int j = 1; j <= n; ++j) acc += s.coeff(j) * r[static_cast<std::size_t>(n - j)];
    r[static_cast<std::size_t>(n)] = -acc / s.coeff(0);
  }
  return TaylorSeries(std::move(r));
}

// Compositional inverse g with g(f(z)) = z through the truncation order,
// solved coefficient by coefficient: the degree-m defect of g(f) is linear in
// g_m because f starts with z. Returns a normalized series of the same order.
inline NormalizedSeries invert(const NormalizedSeries& f) {
  const int n = f.order();
  std::vector<Complex> g(static_cast<std::size_t>(n) + 1, 0.0);
  g[1] = 1.0;
  for (int m = 2; m <= n; ++m) {
    const TaylorSeries round_trip = compose(TaylorSeries(g), f.series());
    g[static_cast<std::size_t>(m)] -= round_trip.coeff(m);
  }
  return NormalizedSeries(TaylorSeries(std::move(g)));
}

}  // namespace gft

#endif  // GFT_SERIES_HPP
