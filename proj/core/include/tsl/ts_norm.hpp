#pragma once

#include <span>
#include <utility>
#include <vector>

#include "tsl/error.hpp"
#include "tsl/families.hpp"
#include "tsl/theta.hpp"
#include "tsl/vector.hpp"

namespace tsl {

/// Witness tree for the implicitly defined norm. Each node covers the
/// restriction of x to an interval and is either zero, a sup-norm leaf, or an
/// admissible interval family whose children cover the intervals.
struct TsCertificate {
  enum class Kind { zero, sup, family };

  Kind kind = Kind::zero;
  Rational value;
  Index index = 0;
  Mask witness = 0;
  std::vector<Index> m;
  std::vector<std::pair<Index, Index>> intervals;
  std::vector<TsCertificate> children;
};

struct TsResult {
  Rational value;
  TsCertificate certificate;
};

/// Minimal solution of N(x) = max(|x|_∞, θ·max Σ N(I_k x)) over admissible
/// interval families with at least two members, by interval dynamic
/// programming on {1, ..., max supp x}.
TsResult ts_norm(const RationalVector& x, const AdmissibilitySystem& system, const Theta& theta = Theta::half(),
                 const Caps& caps = Caps::from_env());

/// Same, against an explicit restriction of the system at level >= max supp x.
TsResult ts_norm(const RationalVector& x, std::span<const Mask> restriction, const Theta& theta = Theta::half(),
                 const Caps& caps = Caps::from_env());

/// Re-evaluates a certificate bottom-up against x and the system and returns
/// the value it proves as a lower bound, or an error description.
struct TsCheck {
  bool ok = false;
  Rational value;
  std::string message;
};
TsCheck check_ts_certificate(const RationalVector& x, const AdmissibilitySystem& system, const Theta& theta,
                             const TsCertificate& certificate);

}  // namespace tsl
