#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nordgeom/errors.hpp"
#include "nordgeom/scalar.hpp"

namespace nordgeom {

// Outcome of an identity check. On failure carries the first violating
// index tuple (1-based) and the nonzero residual.
struct Verdict {
  std::string check;
  bool pass = true;
  std::vector<int> witness;
  std::optional<Scalar> residual;
  std::string detail;

  static Verdict ok(std::string check) { return Verdict{std::move(check), true, {}, std::nullopt, {}}; }
  static Verdict fail(std::string check, std::vector<int> witness_zero_based, std::optional<Scalar> residual,
                      std::string detail = {}) {
    for (auto& i : witness_zero_based) ++i;
    return Verdict{std::move(check), false, std::move(witness_zero_based), std::move(residual), std::move(detail)};
  }

  explicit operator bool() const { return pass; }
  std::string describe() const;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(Verdict verdict) : Error(verdict.describe()), verdict_(std::move(verdict)) {}
  const Verdict& verdict() const { return verdict_; }

 private:
  Verdict verdict_;
};

}  // namespace nordgeom
