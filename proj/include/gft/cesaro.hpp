#ifndef GFT_CESARO_HPP
#define GFT_CESARO_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "gft/errors.hpp"
#include "gft/series.hpp"

namespace gft {

// C(x, m) = x (x-1) ... (x-m+1) / m! for real x and integer m >= 0.
inline double generalized_binomial(double x, int m) {
  if (m < 0) throw std::invalid_argument("generalized_binomial: m must be >= 0");
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= (x - static_cast<double>(i)) / static_cast<double>(i + 1);
  return r;
}

// Two weighting conventions for the k-th mean of order alpha.
//   Normalized:  A_n = C(k+a-n, k-n) / C(k+a-1, k-n), so A_1 = A_k = 1.
//   Classical:   A_n = C(k+a-n, k-n) / C(k+a, k); at a = 0 every weight is 1
//                and the mean reduces to the degree-k partial sum.
enum class CesaroFlavor { Normalized, Classical };

struct CesaroParams {
  int k;
  double alpha;

  CesaroParams(int k_, double alpha_) : k(k_), alpha(alpha_) {
    if (k < 1) throw std::invalid_argument("CesaroParams: k must be >= 1");
    if (!std::isfinite(alpha) || alpha < 0.0)
      throw std::invalid_argument("CesaroParams: alpha must be finite and >= 0");
  }
};

// Weight applied to the degree-n coefficient, 1 <= n <= k.
inline double cesaro_factor(const CesaroParams& p, int n,
                            CesaroFlavor flavor = CesaroFlavor::Normalized) {
  if (n < 1 || n > p.k)
    throw std::invalid_argument("cesaro_factor: n must satisfy 1 <= n <= k");
  const double num = generalized_binomial(p.k + p.alpha - n, p.k - n);
  const double den = flavor == CesaroFlavor::Normalized
                         ? generalized_binomial(p.k + p.alpha - 1, p.k - n)
                         : generalized_binomial(p.k + p.alpha, p.k);
  if (den == 0.0)
    throw undefined_formula("cesaro_factor: zero denominator at k=" + std::to_string(p.k) +
                            " alpha=" + std::to_string(p.alpha) + " n=" + std::to_string(n));
  return num / den;
}

// Apply the mean to a normalized series: coefficient n is scaled by A_n for
// n <= k and dropped beyond k. The input order must be at least k.
inline TaylorSeries apply_cesaro(const NormalizedSeries& f, const CesaroParams& p,
                                 CesaroFlavor flavor = CesaroFlavor::Normalized) {
  if (f.order() < p.k)
    throw std::invalid_argument("apply_cesaro: series order must be >= k");
  std::vector<Complex> out(static_cast<std::size_t>(f.order()) + 1, 0.0);
  for (int n = 1; n <= p.k; ++n)
    out[static_cast<std::size_t>(n)] = cesaro_factor(p, n, flavor) * f.coeff(n);
  return TaylorSeries(std::move(out));
}

}  // namespace gft

#endif  // GFT_CESARO_HPP
