#include "tsl/families.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "tsl/error.hpp"

namespace tsl {

Mask mask_of(const std::vector<Index>& elements) {
  Mask m = 0;
  for (Index i : elements) {
    if (i < 1 || i > kMaxLevel) throw InputError("set element " + std::to_string(i) + " outside [1, 62]");
    m |= Mask{1} << (i - 1);
  }
  return m;
}

std::vector<Index> elements_of(Mask mask) {
  std::vector<Index> out;
  while (mask != 0) {
    out.push_back(__builtin_ctzll(mask) + 1);
    mask &= mask - 1;
  }
  return out;
}

SuccessiveFamily::SuccessiveFamily(std::vector<std::vector<Index>> sets) : sets_(std::move(sets)) {
  for (std::size_t k = 0; k < sets_.size(); ++k) {
    auto& e = sets_[k];
    if (e.empty()) throw InputError("family set " + std::to_string(k) + " is empty");
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw InputError("family set " + std::to_string(k) + " has repeated elements");
    }
    if (e.front() < 1) throw InputError("family set " + std::to_string(k) + " has a non-positive element");
    if (k > 0 && sets_[k - 1].back() >= e.front()) {
      throw InputError("family is not successive: max E" + std::to_string(k) + " >= min E" +
                       std::to_string(k + 1));
    }
  }
}

AdmissibilityResult is_admissible(std::span<const Mask> restriction, const SuccessiveFamily& family) {
  AdmissibilityResult out;
  if (family.size() == 0) return out;
  for (Mask a : restriction) {
    if (popcount(a) < static_cast<int>(family.size())) continue;
    std::vector<Index> m;
    Index floor = 1;  // next witness must be >= floor
    bool ok = true;
    for (const auto& e : family.sets()) {
      const Mask eligible = floor > kMaxLevel ? 0 : a & ~prefix_mask(floor - 1);
      const Index mk = min_element_of(eligible);
      if (mk == 0 || mk > e.front()) {
        ok = false;
        break;
      }
      m.push_back(mk);
      floor = e.back() + 1;
    }
    if (ok) {
      out.admissible = true;
      out.witness = a;
      out.m = std::move(m);
      return out;
    }
  }
  return out;
}

namespace {

void check_level(int level) {
  if (level < 0 || level > kMaxLevel) throw InputError("level " + std::to_string(level) + " outside [0, 62]");
}

void normalize(std::vector<Mask>& family) {
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
}

// All subsets of `pool` with at most `k` elements, each OR-ed with `base`.
void subsets_up_to(Mask pool, int k, Mask base, std::vector<Mask>& out) {
  out.push_back(base);
  if (k == 0 || pool == 0) return;
  Mask rest = pool;
  while (rest != 0) {
    const Mask bit = rest & (~rest + 1);
    rest &= rest - 1;
    // Only elements above `bit` remain available, so each subset is built once.
    subsets_up_to(rest, k - 1, base | bit, out);
  }
}

}  // namespace

std::vector<Mask> classic_restriction(int level) {
  check_level(level);
  std::vector<Mask> out{0};
  // No nonempty A with min A = 1 satisfies |A| < 1.
  for (Index m = 2; m <= level; ++m) {
    const Mask above = prefix_mask(level) & ~prefix_mask(m);
    subsets_up_to(above, m - 2, Mask{1} << (m - 1), out);
  }
  normalize(out);
  return out;
}

std::vector<Mask> size_cap_restriction(int k, bool strict, int level) {
  check_level(level);
  if (k < 0) throw InputError("size cap must be non-negative");
  const int cap = strict ? k - 1 : k;
  std::vector<Mask> out;
  if (cap < 0) return out;
  subsets_up_to(prefix_mask(level), cap, 0, out);
  normalize(out);
  return out;
}

std::vector<Mask> mt_restriction(const TreeSpec& tree, int level) {
  check_level(level);
  std::vector<Mask> out;
  subsets_up_to(prefix_mask(level), 3, 0, out);
  for (const auto& nu : tree.nodes_with_sum_at_most(level)) out.push_back(mask_of(tilde(nu)));
  normalize(out);
  return out;
}

std::vector<Mask> maximal_members(std::span<const Mask> family, int min_size) {
  std::vector<Mask> sorted(family.begin(), family.end());
  // Larger sets first, so each candidate is compared only with kept sets.
  std::sort(sorted.begin(), sorted.end(), [](Mask a, Mask b) {
    const int pa = popcount(a), pb = popcount(b);
    return pa != pb ? pa > pb : a < b;
  });
  std::vector<Mask> kept;
  for (Mask a : sorted) {
    if (popcount(a) < min_size) continue;
    const bool covered = std::any_of(kept.begin(), kept.end(), [a](Mask b) { return (a & ~b) == 0; });
    if (!covered) kept.push_back(a);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

struct AdmissibilitySystem::Impl {
  SystemSpec spec;
  mutable std::mutex mu;
  mutable std::map<int, std::vector<Mask>> cache;
};

AdmissibilitySystem::AdmissibilitySystem(SystemSpec spec) {
  auto impl = std::make_shared<Impl>();
  impl->spec = std::move(spec);
  impl_ = std::move(impl);
}

AdmissibilitySystem AdmissibilitySystem::explicit_sets(std::vector<std::vector<Index>> sets) {
  for (const auto& s : sets) (void)mask_of(s);
  return AdmissibilitySystem(ExplicitSystem{std::move(sets)});
}

AdmissibilitySystem AdmissibilitySystem::size_cap(int k, bool strict) {
  if (k < 0) throw InputError("size cap must be non-negative");
  return AdmissibilitySystem(SizeCapSystem{k, strict});
}

AdmissibilitySystem AdmissibilitySystem::classic() { return AdmissibilitySystem(ClassicSystem{}); }

AdmissibilitySystem AdmissibilitySystem::from_tree(TreeSpec tree) {
  return AdmissibilitySystem(TreeSystem{std::move(tree)});
}

AdmissibilitySystem AdmissibilitySystem::union_of(std::vector<AdmissibilitySystem> systems) {
  return AdmissibilitySystem(UnionSystem{std::move(systems)});
}

const SystemSpec& AdmissibilitySystem::spec() const { return impl_->spec; }

std::vector<Mask> AdmissibilitySystem::restriction(int level) const {
  check_level(level);
  {
    std::lock_guard lock(impl_->mu);
    if (auto it = impl_->cache.find(level); it != impl_->cache.end()) return it->second;
  }
  std::vector<Mask> out;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ExplicitSystem>) {
          for (const auto& set : s.sets) out.push_back(mask_of(set) & prefix_mask(level));
        } else if constexpr (std::is_same_v<T, SizeCapSystem>) {
          out = size_cap_restriction(s.k, s.strict, level);
        } else if constexpr (std::is_same_v<T, ClassicSystem>) {
          out = classic_restriction(level);
        } else if constexpr (std::is_same_v<T, TreeSystem>) {
          out = mt_restriction(s.tree, level);
        } else {
          for (const auto& sub : s.of) {
            const auto part = sub.restriction(level);
            out.insert(out.end(), part.begin(), part.end());
          }
        }
      },
      impl_->spec);
  normalize(out);
  std::lock_guard lock(impl_->mu);
  impl_->cache.emplace(level, out);
  return out;
}

}  // namespace tsl
