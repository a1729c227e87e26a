#ifndef GFT_CLASS_SPEC_HPP
#define GFT_CLASS_SPEC_HPP

#include <optional>
#include <variant>

#include "gft/bounds.hpp"
#include "gft/cesaro.hpp"
#include "gft/errors.hpp"

namespace gft {

enum class ClassFamily { Psi, Strong, RealPart };

inline const char* to_string(ClassFamily f) {
  switch (f) {
    case ClassFamily::Psi: return "psi";
    case ClassFamily::Strong: return "strong";
    case ClassFamily::RealPart: return "realpart";
  }
  return "unknown";
}

// A function class together with the operator acting on it.
//
// cesaro absent means the operator is the identity: every coefficient weight
// and every bound prefactor is exactly 1. unit_weights keeps the operator's k
// visible to formulas that need it (the sector-class radicand) while forcing
// the weights and prefactors to 1; this is the k = n reduction in which the
// mean leaves a degree-k polynomial unchanged.
struct ClassSpec {
  std::variant<PsiCoefficients, QParams, HBetaParams> family;
  std::optional<CesaroParams> cesaro;
  bool unit_weights = false;
  CesaroFlavor flavor = CesaroFlavor::Normalized;

  ClassFamily family_tag() const {
    switch (family.index()) {
      case 0: return ClassFamily::Psi;
      case 1: return ClassFamily::Strong;
      default: return ClassFamily::RealPart;
    }
  }

  const char* family_name() const { return to_string(family_tag()); }

  bool identity_operator() const { return unit_weights || !cesaro.has_value(); }

  // Coefficient weights A2, A3 used by member construction. Under a genuine
  // mean these require k >= 3 so that both degrees survive truncation.
  double a2_weight() const {
    if (identity_operator()) return 1.0;
    if (cesaro->k < 3) throw undefined_formula("k<3");
    return cesaro_factor(*cesaro, 2, flavor);
  }

  double a3_weight() const {
    if (identity_operator()) return 1.0;
    if (cesaro->k < 3) throw undefined_formula("k<3");
    return cesaro_factor(*cesaro, 3, flavor);
  }

  double prefactor_a2() const {
    if (identity_operator()) return 1.0;
    if (flavor == CesaroFlavor::Normalized) return ratio_a2(*cesaro);
    const double w = a2_weight();
    if (w == 0.0) throw undefined_formula("zero a2 weight");
    return 1.0 / w;
  }

  double prefactor_a3() const {
    if (identity_operator()) return 1.0;
    if (flavor == CesaroFlavor::Normalized) {
      if (cesaro->k < 3) throw undefined_formula("k<3");
      return ratio_a3(*cesaro);
    }
    const double w = a3_weight();
    if (w == 0.0) throw undefined_formula("zero a3 weight");
    return 1.0 / w;
  }

  BoundResult bound_a2() const {
    const double pf = prefactor_a2();
    switch (family_tag()) {
      case ClassFamily::Psi:
        return bound_a2_psi(pf, std::get<PsiCoefficients>(family));
      case ClassFamily::Strong: {
        if (!cesaro.has_value())
          throw undefined_formula("operator index k required");
        return bound_a2_strong(pf, cesaro->k, std::get<QParams>(family));
      }
      case ClassFamily::RealPart:
        return bound_a2_realpart(pf, std::get<HBetaParams>(family));
    }
    throw std::logic_error("ClassSpec: bad family");
  }

  BoundResult bound_a3() const {
    const double pf = prefactor_a3();
    switch (family_tag()) {
      case ClassFamily::Psi:
        return bound_a3_psi(pf, std::get<PsiCoefficients>(family));
      case ClassFamily::Strong:
        return bound_a3_strong(pf, std::get<QParams>(family));
      case ClassFamily::RealPart:
        return bound_a3_realpart(pf, std::get<HBetaParams>(family));
    }
    throw std::logic_error("ClassSpec: bad family");
  }
};

}  // namespace gft

#endif  // GFT_CLASS_SPEC_HPP
