#ifndef GFT_ERRORS_HPP
#define GFT_ERRORS_HPP

#include <limits>
#include <stdexcept>
#include <string>

namespace gft {

// Raised when a closed-form bound (or one of its binomial prefactors) is not
// defined at the requested parameters, e.g. a3 formulas with k < 3 or a
// nonpositive radicand. Callers that produce tables or reports catch this and
// record the cell as undefined instead of aborting the run.
class undefined_formula : public std::domain_error {
 public:
  explicit undefined_formula(const std::string& reason)
      : std::domain_error(reason),
        reason_(reason),
        radicand_(std::numeric_limits<double>::quiet_NaN()) {}

  undefined_formula(const std::string& reason, double radicand)
      : std::domain_error(reason + " (radicand " + std::to_string(radicand) + ")"),
        reason_(reason),
        radicand_(radicand) {}

  const std::string& reason() const noexcept { return reason_; }

  // Radicand value for nonpositive-radicand failures; NaN otherwise.
  double radicand() const noexcept { return radicand_; }

 private:
  std::string reason_;
  double radicand_;
};

}  // namespace gft

#endif  // GFT_ERRORS_HPP
