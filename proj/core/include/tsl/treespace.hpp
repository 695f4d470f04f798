#pragma once

#include <map>
#include <vector>

#include "tsl/gauge.hpp"
#include "tsl/trees.hpp"

namespace tsl {

/// Finitely supported vector on the nonempty binary strings, i.e. an element
/// of the tree space (or of its dual) in the basis z_η.
class TreeVector {
 public:
  using Storage = std::map<BinaryString, Rational>;

  TreeVector() = default;

  [[nodiscard]] Rational operator[](const BinaryString& key) const;
  /// Throws InputError for an empty key or a non-binary entry.
  void set(const BinaryString& key, const Rational& value);

  [[nodiscard]] bool is_zero() const { return coords_.empty(); }
  [[nodiscard]] std::size_t nnz() const { return coords_.size(); }
  [[nodiscard]] std::size_t max_length() const;
  [[nodiscard]] const Storage& coords() const { return coords_; }
  [[nodiscard]] auto begin() const { return coords_.begin(); }
  [[nodiscard]] auto end() const { return coords_.end(); }

  TreeVector& operator+=(const TreeVector& rhs);
  TreeVector& operator*=(const Rational& s);
  friend TreeVector operator+(TreeVector a, const TreeVector& b) { return a += b; }
  friend TreeVector operator*(const Rational& s, TreeVector v) { return v *= s; }
  friend bool operator==(const TreeVector&, const TreeVector&) = default;

 private:
  Storage coords_;
};

Rational inner(const TreeVector& f, const TreeVector& x);

/// Length-L strings (L = longest key) such that every key is a prefix of one
/// of them: the maximal keys, padded with zeros. Sorted, duplicate-free.
std::vector<BinaryString> relevant_branches(const TreeVector& x);

/// Σ_ℓ x(σ|_ℓ) e_ℓ for ℓ <= |σ|.
RationalVector branch_restriction(const TreeVector& x, const BinaryString& sigma);

/// Σ_ℓ λ_ℓ z_{σ|_ℓ}. Throws InputError when |λ| > |σ|.
TreeVector branch_embed(const std::vector<Rational>& lambda, const BinaryString& sigma);

/// The admissibility system M_{T(σ)} of the section along σ, truncated at
/// depth |σ|.
AdmissibilitySystem section_system(const Tree2Spec& tree, const BinaryString& sigma);

struct BranchValue {
  BinaryString branch;
  Rational value;
};

struct TreeNormResult {
  Rational value;
  BinaryString branch;
  GaugeCertificate certificate;
  std::vector<BranchValue> branches;
};

/// sup over σ of the gauge of the branch restriction under M_{T(σ)},
/// attained on the relevant branches.
TreeNormResult tree_norm(const TreeVector& x, const Tree2Spec& tree, const Theta& theta = Theta::half(),
                         const Caps& caps = Caps::from_env());

struct TreeDualResult {
  Rational value;
  TreeVector witness;
};

/// sup{inner(f, x) : tree_norm(x) <= 1}, as one joint LP over the relevant
/// branches. The witness attains the value and has tree norm <= 1.
TreeDualResult tree_dual_norm(const TreeVector& f, const Tree2Spec& tree, const Theta& theta = Theta::half(),
                              const Caps& caps = Caps::from_env());

}  // namespace tsl
