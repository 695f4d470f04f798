#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tsl/trees.hpp"
#include "tsl/vector.hpp"

namespace tsl {

/// Finite subset of {1, ..., 62} as a bitmask; bit i-1 stands for i.
using Mask = std::uint64_t;

inline constexpr int kMaxLevel = 62;

Mask mask_of(const std::vector<Index>& elements);
std::vector<Index> elements_of(Mask mask);
inline Mask prefix_mask(int level) { return level <= 0 ? 0 : (Mask{1} << level) - 1; }
inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline Index min_element_of(Mask m) { return m == 0 ? 0 : __builtin_ctzll(m) + 1; }
inline Index max_element_of(Mask m) { return m == 0 ? 0 : 64 - __builtin_clzll(m); }

/// Successive nonempty finite sets E1 < E2 < ... < En.
class SuccessiveFamily {
 public:
  SuccessiveFamily() = default;
  /// Sorts each set and validates successiveness; throws InputError.
  explicit SuccessiveFamily(std::vector<std::vector<Index>> sets);

  [[nodiscard]] const std::vector<std::vector<Index>>& sets() const { return sets_; }
  [[nodiscard]] std::size_t size() const { return sets_.size(); }
  [[nodiscard]] Index max_index() const { return sets_.empty() ? 0 : sets_.back().back(); }

 private:
  std::vector<std::vector<Index>> sets_;
};

struct AdmissibilityResult {
  bool admissible = false;
  Mask witness = 0;
  /// Greedy witness elements m1 < ... < mn.
  std::vector<Index> m;
};

/// Decides M-admissibility of a family against a finite restriction of M:
/// some A in the restriction holds m1 <= E1 < m2 <= E2 < ... < mn <= En.
/// The first member (in restriction order) admitting a greedy choice is
/// reported. Families with no sets are never admissible.
AdmissibilityResult is_admissible(std::span<const Mask> restriction, const SuccessiveFamily& family);

class AdmissibilitySystem;

struct ExplicitSystem {
  std::vector<std::vector<Index>> sets;
};
struct SizeCapSystem {
  int k = 3;
  bool strict = false;
};
struct ClassicSystem {};
struct TreeSystem {
  TreeSpec tree;
};
struct UnionSystem {
  std::vector<AdmissibilitySystem> of;
};

using SystemSpec = std::variant<ExplicitSystem, SizeCapSystem, ClassicSystem, TreeSystem, UnionSystem>;

/// A compact family M of finite subsets of N, accessed only through its
/// finite restrictions {A ∩ {1..ℓ} : A ∈ M}. Immutable; copies share state.
class AdmissibilitySystem {
 public:
  static AdmissibilitySystem explicit_sets(std::vector<std::vector<Index>> sets);
  static AdmissibilitySystem size_cap(int k, bool strict);
  static AdmissibilitySystem classic();
  static AdmissibilitySystem from_tree(TreeSpec tree);
  static AdmissibilitySystem union_of(std::vector<AdmissibilitySystem> systems);

  /// Duplicate-free list of subsets of {1..level}, sorted by mask value.
  /// Results are memoized per level.
  [[nodiscard]] std::vector<Mask> restriction(int level) const;
  [[nodiscard]] const SystemSpec& spec() const;

 private:
  struct Impl;
  explicit AdmissibilitySystem(SystemSpec spec);
  std::shared_ptr<const Impl> impl_;
};

/// {A ⊆ {1..level} : |A| < min A} together with ∅.
std::vector<Mask> classic_restriction(int level);
/// {tilde(ν) : ν ∈ T ∪ [T], sum(ν) <= level} ∪ {S ⊆ {1..level} : |S| <= 3}.
std::vector<Mask> mt_restriction(const TreeSpec& tree, int level);
/// All subsets of {1..level} with at most (strict: fewer than) k elements.
std::vector<Mask> size_cap_restriction(int k, bool strict, int level);

/// Inclusion-maximal members with at least `min_size` elements.
std::vector<Mask> maximal_members(std::span<const Mask> family, int min_size = 0);

}  // namespace tsl
