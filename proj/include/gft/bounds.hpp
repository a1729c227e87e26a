#ifndef GFT_BOUNDS_HPP
#define GFT_BOUNDS_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "gft/cesaro.hpp"
#include "gft/errors.hpp"

namespace gft {

// Taylor data of the target function psi(w) = 1 + B1 w + B2 w^2 + ... with
// B1 > 0; only the first two coefficients enter the closed-form bounds.
struct PsiCoefficients {
  double B1;
  double B2;
  std::vector<double> higher;

  PsiCoefficients(double b1, double b2, std::vector<double> rest = {})
      : B1(b1), B2(b2), higher(std::move(rest)) {
    if (!std::isfinite(B1) || !std::isfinite(B2))
      throw std::invalid_argument("PsiCoefficients: coefficients must be finite");
    if (B1 <= 0.0) throw std::invalid_argument("PsiCoefficients: B1 must be > 0");
  }
};

// Sector class: |arg E(z)| < alpha pi / 2 for the weighted expression
// E(z) = ((1-lambda) F(z) + lambda z F'(z)) / z.
struct QParams {
  double alpha;
  double lambda;

  QParams(double alpha_, double lambda_) : alpha(alpha_), lambda(lambda_) {
    if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 1.0)
      throw std::invalid_argument("QParams: alpha must lie in (0, 1]");
    if (!std::isfinite(lambda) || lambda < 1.0)
      throw std::invalid_argument("QParams: lambda must be >= 1");
  }
};

// Half-plane class: Re E(z) > beta for the same weighted expression.
struct HBetaParams {
  double beta;
  double lambda;

  HBetaParams(double beta_, double lambda_) : beta(beta_), lambda(lambda_) {
    if (!std::isfinite(beta) || beta < 0.0 || beta >= 1.0)
      throw std::invalid_argument("HBetaParams: beta must lie in [0, 1)");
    if (!std::isfinite(lambda) || lambda < 1.0)
      throw std::invalid_argument("HBetaParams: lambda must be >= 1");
  }
};

enum class FormulaId { A2Psi, A3Psi, A2Strong, A3Strong, A2RealPart, A3RealPart };

inline const char* to_string(FormulaId id) {
  switch (id) {
    case FormulaId::A2Psi: return "a2_psi";
    case FormulaId::A3Psi: return "a3_psi";
    case FormulaId::A2Strong: return "a2_strong";
    case FormulaId::A3Strong: return "a3_strong";
    case FormulaId::A2RealPart: return "a2_realpart";
    case FormulaId::A3RealPart: return "a3_realpart";
  }
  return "unknown";
}

// value = |prefactor| * core (a2_psi, a2_strong) or prefactor * core (rest);
// the pieces are kept separate so tables can show how a bound decomposes.
struct BoundResult {
  FormulaId formula;
  double prefactor;
  double core;
  double value;
};

// Prefactor attached to |a2|: C(k+a-1, k-2) / C(k+a-2, k-2), defined for k >= 2.
inline double ratio_a2(const CesaroParams& p) {
  if (p.k < 2) throw undefined_formula("k<2");
  const double den = generalized_binomial(p.k + p.alpha - 2, p.k - 2);
  if (den == 0.0) throw undefined_formula("zero denominator in a2 prefactor");
  return generalized_binomial(p.k + p.alpha - 1, p.k - 2) / den;
}

// Prefactor attached to |a3|: C(k+a-1, k-3) / C(k+a-3, k-3), defined for k >= 3.
inline double ratio_a3(const CesaroParams& p) {
  if (p.k < 3) throw undefined_formula("k<3");
  const double den = generalized_binomial(p.k + p.alpha - 3, p.k - 3);
  if (den == 0.0) throw undefined_formula("zero denominator in a3 prefactor");
  return generalized_binomial(p.k + p.alpha - 1, p.k - 3) / den;
}

inline BoundResult bound_a2_psi(double prefactor, const PsiCoefficients& psi) {
  const double b1 = psi.B1;
  const double core = b1 * std::sqrt(b1) /
                      std::sqrt(std::abs(3.0 * b1 * b1 - 4.0 * psi.B2) + 4.0 * b1);
  return {FormulaId::A2Psi, prefactor, core, std::abs(prefactor) * core};
}

inline BoundResult bound_a2_psi(const CesaroParams& p, const PsiCoefficients& psi) {
  return bound_a2_psi(ratio_a2(p), psi);
}

inline BoundResult bound_a3_psi(double prefactor, const PsiCoefficients& psi) {
  const double b1 = psi.B1;
  const double core = (1.0 - 4.0 / (3.0 * b1)) * b1 * b1 * b1 /
                          (std::abs(3.0 * b1 * b1 - 4.0 * psi.B2) + 4.0 * b1) +
                      b1 / 3.0;
  return {FormulaId::A3Psi, prefactor, core, prefactor * core};
}

inline BoundResult bound_a3_psi(const CesaroParams& p, const PsiCoefficients& psi) {
  return bound_a3_psi(ratio_a3(p), psi);
}

// The sector-class |a2| bound carries 4^k and 2*3^k inside the radicand, so
// the operator index k is needed even when the prefactor is 1.
inline BoundResult bound_a2_strong(double prefactor, int k, const QParams& q) {
  if (k < 1) throw std::invalid_argument("bound_a2_strong: k must be >= 1");
  const double lp1 = 1.0 + q.lambda;
  const double p4 = std::pow(4.0, k);
  const double p3 = std::pow(3.0, k);
  const double radicand = p4 * lp1 * lp1 + q.alpha * (2.0 * p3 * lp1 - p4 * lp1 * lp1);
  if (radicand <= 0.0) throw undefined_formula("nonpositive radicand", radicand);
  const double core = 2.0 * q.alpha / std::sqrt(radicand);
  return {FormulaId::A2Strong, prefactor, core, std::abs(prefactor) * core};
}

inline BoundResult bound_a2_strong(const CesaroParams& p, const QParams& q) {
  return bound_a2_strong(ratio_a2(p), p.k, q);
}

inline BoundResult bound_a3_strong(double prefactor, const QParams& q) {
  const double lp1 = 1.0 + q.lambda;
  const double core = 2.0 * q.alpha / (1.0 + 2.0 * q.lambda) +
                      4.0 * q.alpha * q.alpha / (lp1 * lp1);
  return {FormulaId::A3Strong, prefactor, core, prefactor * core};
}

inline BoundResult bound_a3_strong(const CesaroParams& p, const QParams& q) {
  return bound_a3_strong(ratio_a3(p), q);
}

inline BoundResult bound_a2_realpart(double prefactor, const HBetaParams& h) {
  const double core = std::sqrt(2.0 * (1.0 - h.beta) / (1.0 + 2.0 * h.lambda));
  return {FormulaId::A2RealPart, prefactor, core, prefactor * core};
}

inline BoundResult bound_a2_realpart(const CesaroParams& p, const HBetaParams& h) {
  return bound_a2_realpart(ratio_a2(p), h);
}

inline BoundResult bound_a3_realpart(double prefactor, const HBetaParams& h) {
  const double lp1 = 1.0 + h.lambda;
  const double omb = 1.0 - h.beta;
  const double core = 4.0 * omb * omb / (lp1 * lp1) + 2.0 * omb / (1.0 + 2.0 * h.lambda);
  return {FormulaId::A3RealPart, prefactor, core, prefactor * core};
}

inline BoundResult bound_a3_realpart(const CesaroParams& p, const HBetaParams& h) {
  return bound_a3_realpart(ratio_a3(p), h);
}

}  // namespace gft

#endif  // GFT_BOUNDS_HPP
