#pragma once

#include "tsl/error.hpp"
#include "tsl/rational.hpp"

namespace tsl {

/// The contraction constant θ ∈ (0, 1) of the admissible operations.
class Theta {
 public:
  Theta() : value_(1, 2) {}
  explicit Theta(Rational value) : value_(std::move(value)) {
    if (value_.sign() <= 0 || value_ >= Rational(1)) {
      throw InputError("theta must lie strictly between 0 and 1, got " + value_.str());
    }
  }
  static Theta half() { return Theta(); }

  [[nodiscard]] const Rational& value() const { return value_; }
  /// 1/θ, the constant that replaces "2" in the block inequalities.
  [[nodiscard]] Rational inverse() const { return Rational(1) / value_; }

  friend bool operator==(const Theta&, const Theta&) = default;

 private:
  Rational value_;
};

}  // namespace tsl
