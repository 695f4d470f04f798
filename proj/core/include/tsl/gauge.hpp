#pragma once

#include <map>
#include <string>
#include <vector>

#include "tsl/generators.hpp"
#include "tsl/ts_norm.hpp"

namespace tsl {

/// One term of a decomposition x = Σ coefficient · vector, where `vector`
/// is coordinatewise dominated in absolute value by the generator it cites.
struct DecompositionTerm {
  Rational coefficient;
  int generator = -1;  // id into GaugeCertificate::derivations
  RationalVector vector;
};

/// Two-sided proof of a gauge value:
///  - upper bound: x = Σ c_k v_k with Σ c_k = value and each v_k in the
///    solid hull of a derived member of the unit ball;
///  - lower bound: a functional with inner(dual, x) = value whose
///    implicit-norm value is at most 1.
struct GaugeCertificate {
  Rational value;
  std::vector<Index> window;
  std::vector<DecompositionTerm> decomposition;
  RationalVector dual;
  /// Derivations of every generator the decomposition uses, closed under
  /// parents, keyed by archive id.
  std::map<int, GeneratorRecord> derivations;
};

struct GaugeResult {
  Rational value;
  GaugeCertificate certificate;
};

/// Minkowski gauge of the unit ball of Tss[M, θ] at x, computed exactly as a
/// covering LP over the nonnegative generators on supp(x).
GaugeResult tss_gauge(const RationalVector& x, const AdmissibilitySystem& system, const Theta& theta = Theta::half(),
                      const Caps& caps = Caps::from_env());

struct GaugeCheck {
  bool ok = false;
  std::string message;
};

/// Independent re-validation of both halves of a gauge certificate.
GaugeCheck check_gauge_certificate(const RationalVector& x, const AdmissibilitySystem& system, const Theta& theta,
                                   const GaugeCertificate& certificate, const Caps& caps = Caps::from_env());

/// max over generators g of inner(|f|, g): the support function of the unit
/// ball at f, restricted to the given generator set.
Rational support_value(const RationalVector& f, const GeneratorSet& generators);

}  // namespace tsl
