#ifndef GFT_CONSTRUCT_HPP
#define GFT_CONSTRUCT_HPP

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "gft/class_spec.hpp"
#include "gft/series.hpp"

namespace gft {

// Numerical slack applied to the prefix inequalities below, so boundary seeds
// (the extremal ones) are not rejected by rounding.
inline constexpr double kFeasibilityTol = 1e-12;

// First two Toeplitz conditions for a function with positive real part:
// |p1| <= 2 and |p2 - p1^2/2| <= 2 - |p1|^2/2.
inline bool caratheodory_prefix_feasible(Complex p1, Complex p2,
                                         double tol = kFeasibilityTol) {
  const double m1 = std::abs(p1);
  if (m1 > 2.0 + tol) return false;
  return std::abs(p2 - p1 * p1 * 0.5) <= 2.0 - m1 * m1 * 0.5 + tol;
}

// Schwarz function prefix: |b1| <= 1 and |b2| <= 1 - |b1|^2.
inline bool schwarz_prefix_feasible(Complex b1, Complex b2,
                                    double tol = kFeasibilityTol) {
  const double m1 = std::abs(b1);
  if (m1 > 1.0 + tol) return false;
  return std::abs(b2) <= 1.0 - m1 * m1 + tol;
}

struct CaratheodoryPrefix {
  Complex p1;
  Complex p2;

  CaratheodoryPrefix(Complex p1_, Complex p2_) : p1(p1_), p2(p2_) {
    if (!caratheodory_prefix_feasible(p1, p2))
      throw std::invalid_argument("CaratheodoryPrefix: violates Toeplitz conditions");
  }
};

struct SchwarzPrefix {
  Complex b1;
  Complex b2;

  SchwarzPrefix(Complex b1_, Complex b2_) : b1(b1_), b2(b2_) {
    if (!schwarz_prefix_feasible(b1, b2))
      throw std::invalid_argument("SchwarzPrefix: violates Schwarz coefficient conditions");
  }
};

// (1 + u) / (1 - u) for a Schwarz-type series u; sends the disk data to a
// positive-real-part function. Requires u(0) = 0 and |u'(0)| <= 1.
inline TaylorSeries caratheodory_from_schwarz(const TaylorSeries& u) {
  if (u.coeff(0) != 0.0)
    throw std::invalid_argument("caratheodory_from_schwarz: u(0) must be 0");
  if (std::abs(u.coeff(1)) > 1.0 + kFeasibilityTol)
    throw std::invalid_argument("caratheodory_from_schwarz: |u'(0)| must be <= 1");
  const TaylorSeries one = TaylorSeries::constant(1.0, u.order());
  return multiply(linear_combine(one, u, 1.0, 1.0),
                  reciprocal(linear_combine(one, u, 1.0, -1.0)));
}

// Output of the two-sided coefficient systems: the series coefficients a2, a3
// determined by a seed prefix, the prefix forced on the inverse side, and
// whether that forced prefix still satisfies its own body constraint.
struct CoefficientSolution {
  Complex a2;
  Complex a3;
  Complex derived1;
  Complex derived2;
  bool feasible;
};

namespace detail {

inline void require_weights(double A2, double A3, const char* who) {
  if (A2 == 0.0 || A3 == 0.0)
    throw std::invalid_argument(std::string(who) + ": weights A2, A3 must be nonzero");
}

}  // namespace detail

// Target-function class: (d/dz) of the weighted series is subordinate to psi.
// Seed side b, derived side c. Systems solved:
//   2 A2 a2 = B1 b1,  3 A3 a3 = B1 b2 + B2 b1^2,
//   B1 c1 = -2 A2 a2, B1 c2 + B2 c1^2 = 3 (2 A2^2 a2^2 - A3 a3).
inline CoefficientSolution solve_psi(Complex b1, Complex b2, const PsiCoefficients& psi,
                                     double A2, double A3,
                                     double tol = kFeasibilityTol) {
  detail::require_weights(A2, A3, "solve_psi");
  const Complex a2 = psi.B1 * b1 / (2.0 * A2);
  const Complex a3 = (psi.B1 * b2 + psi.B2 * b1 * b1) / (3.0 * A3);
  const Complex c1 = -b1;
  const Complex c2 =
      (3.0 * (2.0 * A2 * A2 * a2 * a2 - A3 * a3) - psi.B2 * c1 * c1) / psi.B1;
  return {a2, a3, c1, c2, schwarz_prefix_feasible(c1, c2, tol)};
}

// Sector class: the weighted expression is a Caratheodory function raised to
// the power alpha. Seed side p, derived side q. Systems solved:
//   (1+l) A2 a2 = a p1,  2 (1+2l) A3 a3 = 2 a p2 + a(a-1) p1^2,
//   a q1 = -(1+l) A2 a2, 2 a q2 + a(a-1) q1^2 = 2 (1+2l)(2 A2^2 a2^2 - A3 a3).
inline CoefficientSolution solve_strong(Complex p1, Complex p2, const QParams& q,
                                        double A2, double A3,
                                        double tol = kFeasibilityTol) {
  detail::require_weights(A2, A3, "solve_strong");
  const double l = q.lambda;
  const Complex a2 = q.alpha * p1 / ((1.0 + l) * A2);
  const Complex a3 =
      (2.0 * q.alpha * p2 + q.alpha * (q.alpha - 1.0) * p1 * p1) /
      (2.0 * (1.0 + 2.0 * l) * A3);
  const Complex q1 = -p1;
  const Complex q2 =
      (2.0 * (1.0 + 2.0 * l) * (2.0 * A2 * A2 * a2 * a2 - A3 * a3) -
       q.alpha * (q.alpha - 1.0) * q1 * q1) /
      (2.0 * q.alpha);
  return {a2, a3, q1, q2, caratheodory_prefix_feasible(q1, q2, tol)};
}

// Half-plane class: Re of the weighted expression exceeds beta. Systems:
//   (1+l) A2 a2 = (1-b) p1,  (1+2l) A3 a3 = (1-b) p2,
//   (1-b) q1 = -(1+l) A2 a2, (1-b) q2 = (1+2l)(2 A2^2 a2^2 - A3 a3).
inline CoefficientSolution solve_realpart(Complex p1, Complex p2, const HBetaParams& h,
                                          double A2, double A3,
                                          double tol = kFeasibilityTol) {
  detail::require_weights(A2, A3, "solve_realpart");
  const double l = h.lambda;
  const double omb = 1.0 - h.beta;
  const Complex a2 = omb * p1 / ((1.0 + l) * A2);
  const Complex a3 = omb * p2 / ((1.0 + 2.0 * l) * A3);
  const Complex q1 = -p1;
  const Complex q2 =
      (1.0 + 2.0 * l) * (2.0 * A2 * A2 * a2 * a2 - A3 * a3) / omb;
  return {a2, a3, q1, q2, caratheodory_prefix_feasible(q1, q2, tol)};
}

// A candidate class member: the normalized series whose first coefficients
// solve the two-sided system for the given seed, plus the derived inverse-side
// prefix and whether it is feasible.
struct ClassMember {
  NormalizedSeries f;
  Complex a2;
  Complex a3;
  ClassSpec spec;
  Complex seed1;
  Complex seed2;
  Complex derived1;
  Complex derived2;
  bool feasible;
};

namespace detail {

inline ClassMember finish_member(const ClassSpec& spec, Complex s1, Complex s2,
                                 const CoefficientSolution& sol, int order) {
  if (order < 3)
    throw std::invalid_argument("class member: order must be >= 3 to carry a2, a3");
  const std::array<Complex, 2> tail{sol.a2, sol.a3};
  return {NormalizedSeries::from_tail(tail, order), sol.a2,      sol.a3,
          spec,                                     s1,          s2,
          sol.derived1,                             sol.derived2, sol.feasible};
}

}  // namespace detail

inline ClassMember make_psi_member(const SchwarzPrefix& seed, const ClassSpec& spec,
                                   int order = kDefaultOrder) {
  if (spec.family_tag() != ClassFamily::Psi)
    throw std::invalid_argument("make_psi_member: spec does not hold psi data");
  const auto sol = solve_psi(seed.b1, seed.b2, std::get<PsiCoefficients>(spec.family),
                             spec.a2_weight(), spec.a3_weight());
  return detail::finish_member(spec, seed.b1, seed.b2, sol, order);
}

inline ClassMember make_q_member(const CaratheodoryPrefix& seed, const ClassSpec& spec,
                                 int order = kDefaultOrder) {
  if (spec.family_tag() != ClassFamily::Strong)
    throw std::invalid_argument("make_q_member: spec does not hold sector data");
  const auto sol = solve_strong(seed.p1, seed.p2, std::get<QParams>(spec.family),
                                spec.a2_weight(), spec.a3_weight());
  return detail::finish_member(spec, seed.p1, seed.p2, sol, order);
}

inline ClassMember make_hbeta_member(const CaratheodoryPrefix& seed, const ClassSpec& spec,
                                     int order = kDefaultOrder) {
  if (spec.family_tag() != ClassFamily::RealPart)
    throw std::invalid_argument("make_hbeta_member: spec does not hold half-plane data");
  const auto sol = solve_realpart(seed.p1, seed.p2, std::get<HBetaParams>(spec.family),
                                  spec.a2_weight(), spec.a3_weight());
  return detail::finish_member(spec, seed.p1, seed.p2, sol, order);
}

// ((1-l) F(z) + l z F'(z)) / z as a series of order N-1; the defining
// expression of the sector and half-plane classes.
inline TaylorSeries class_expression(const TaylorSeries& F, double lambda) {
  if (F.coeff(0) != 0.0)
    throw std::invalid_argument("class_expression: F must vanish at 0");
  std::vector<Complex> e(F.coeffs().size() - 1);
  for (std::size_t j = 0; j < e.size(); ++j)
    e[j] = (1.0 + static_cast<double>(j) * lambda) * F.coeffs()[j + 1];
  return TaylorSeries(std::move(e));
}

struct VerificationReport {
  ClassSpec spec;
  double radius;
  int samples;
  double tolerance;
  double extremal_value;
  double threshold;
  bool pass;
  std::vector<std::string> flags;
};

// Sample the class-defining condition on |z| = radius for the weighted series
// F and, when F is normalized, for its compositional inverse. Truncation can
// break a strict inequality that holds for the full function, so the verdict
// is advisory and flagged as such.
inline VerificationReport verify_membership(const ClassMember& m, double radius = 0.999,
                                            int samples = 4096, double tol = 1e-9) {
  if (!(radius > 0.0) || !(radius < 1.0))
    throw std::invalid_argument("verify_membership: radius must lie in (0, 1)");
  if (samples < 1) throw std::invalid_argument("verify_membership: samples must be >= 1");
  if (!(tol >= 0.0)) throw std::invalid_argument("verify_membership: tolerance must be >= 0");

  VerificationReport rep{m.spec, radius, samples, tol, 0.0, 0.0, false, {}};
  rep.flags.push_back("advisory-truncation");
  if (!m.feasible) rep.flags.push_back("derived-prefix-infeasible");

  const TaylorSeries F = m.spec.identity_operator()
                             ? m.f.series()
                             : apply_cesaro(m.f, *m.spec.cesaro, m.spec.flavor);

  std::vector<TaylorSeries> sides;
  sides.push_back(F);
  if (F.coeff(1) == 1.0) {
    sides.push_back(invert(NormalizedSeries(F)).series());
  } else {
    rep.flags.push_back("inverse-side-skipped");
  }

  const ClassFamily fam = m.spec.family_tag();
  double lambda = 0.0;
  if (fam == ClassFamily::Strong) lambda = std::get<QParams>(m.spec.family).lambda;
  if (fam == ClassFamily::RealPart) lambda = std::get<HBetaParams>(m.spec.family).lambda;

  const double two_pi = 8.0 * std::atan(1.0);
  bool first = true;
  for (const TaylorSeries& side : sides) {
    const TaylorSeries expr = fam == ClassFamily::Psi
                                  ? derive(side)
                                  : class_expression(side, lambda);
    for (int j = 0; j < samples; ++j) {
      const double t = two_pi * static_cast<double>(j) / static_cast<double>(samples);
      const Complex z = radius * Complex(std::cos(t), std::sin(t));
      const Complex w = eval(expr, z);
      const double metric = fam == ClassFamily::Strong ? std::abs(std::arg(w)) : w.real();
      if (first) {
        rep.extremal_value = metric;
        first = false;
      } else if (fam == ClassFamily::Strong) {
        rep.extremal_value = std::max(rep.extremal_value, metric);
      } else {
        rep.extremal_value = std::min(rep.extremal_value, metric);
      }
    }
  }

  switch (fam) {
    case ClassFamily::Psi:
      rep.threshold = 0.0;
      rep.pass = rep.extremal_value > -tol;
      rep.flags.push_back("psi-necessary-condition");
      break;
    case ClassFamily::Strong: {
      const double pi = 4.0 * std::atan(1.0);
      rep.threshold = pi * std::get<QParams>(m.spec.family).alpha / 2.0;
      rep.pass = rep.extremal_value < rep.threshold + tol;
      break;
    }
    case ClassFamily::RealPart:
      rep.threshold = std::get<HBetaParams>(m.spec.family).beta;
      rep.pass = rep.extremal_value > rep.threshold - tol;
      break;
  }
  return rep;
}

}  // namespace gft

#endif  // GFT_CONSTRUCT_HPP
