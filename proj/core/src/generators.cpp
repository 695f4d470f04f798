#include "tsl/generators.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace tsl {

namespace {

using Dense = std::vector<Rational>;

struct BlockOp {
  Mask witness = 0;
  std::vector<std::vector<int>> blocks;  // window positions
};

// Distinct block partitions of the window induced by the witness sets.
std::vector<BlockOp> block_ops(std::span<const Mask> restriction, const std::vector<Index>& window) {
  const Index level = window.back();
  std::vector<Mask> clipped;
  for (Mask a : restriction) clipped.push_back(a & prefix_mask(level));
  std::vector<BlockOp> ops;
  std::set<std::vector<std::vector<int>>> seen;
  for (Mask a : maximal_members(clipped, 2)) {
    const auto cuts = elements_of(a);
    BlockOp op;
    op.witness = a;
    for (std::size_t k = 0; k < cuts.size(); ++k) {
      const Index lo = cuts[k];
      const Index hi = k + 1 < cuts.size() ? cuts[k + 1] - 1 : level;
      std::vector<int> block;
      for (std::size_t p = 0; p < window.size(); ++p) {
        if (window[p] >= lo && window[p] <= hi) block.push_back(static_cast<int>(p));
      }
      if (!block.empty()) op.blocks.push_back(std::move(block));
    }
    if (op.blocks.size() >= 2 && seen.insert(op.blocks).second) ops.push_back(std::move(op));
  }
  return ops;
}

bool dominated(const Dense& a, const Dense& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] < a[i]) return false;
  }
  return true;
}

RationalVector sparse(const Dense& d, const std::vector<Index>& window) {
  RationalVector v;
  for (std::size_t p = 0; p < d.size(); ++p) v.set(window[p], d[p]);
  return v;
}

class Closure {
 public:
  Closure(std::vector<Index> window, std::vector<BlockOp> ops, Rational theta, const Caps& caps)
      : window_(std::move(window)), ops_(std::move(ops)), theta_(std::move(theta)), caps_(caps) {}

  GeneratorSet run() {
    const std::size_t d = window_.size();
    for (std::size_t p = 0; p < d; ++p) {
      Dense e(d, Rational(0));
      e[p] = Rational(1);
      GeneratorDerivation der;
      der.basis = window_[p];
      accept(std::move(e), std::move(der));
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& op : ops_) changed |= apply(op);
    }
    return finish();
  }

 private:
  struct Choice {
    Dense part;  // over the block
    int source = -1;
  };

  bool accept(Dense v, GeneratorDerivation der) {
    for (int id : live_) {
      if (dominated(v, archive_[id].first)) return false;
    }
    if (archive_.size() >= caps_.max_generators) {
      throw ResourceError("generator enumeration exceeded " + std::to_string(caps_.max_generators) + " vectors");
    }
    const int id = static_cast<int>(archive_.size());
    std::erase_if(live_, [&](int other) { return dominated(archive_[other].first, v); });
    archive_.emplace_back(std::move(v), std::move(der));
    live_.push_back(id);
    return true;
  }

  std::vector<Choice> choices(const std::vector<int>& block) const {
    std::vector<Choice> out;
    out.push_back({Dense(block.size(), Rational(0)), -1});
    for (int id : live_) {
      Dense part;
      part.reserve(block.size());
      bool nonzero = false;
      for (int p : block) {
        part.push_back(archive_[id].first[p]);
        nonzero |= !part.back().is_zero();
      }
      if (!nonzero) continue;
      bool skip = false;
      for (auto it = out.begin() + 1; it != out.end();) {
        if (dominated(part, it->part)) {
          skip = true;
          break;
        }
        if (dominated(it->part, part)) {
          it = out.erase(it);
        } else {
          ++it;
        }
      }
      if (!skip) out.push_back({std::move(part), id});
    }
    return out;
  }

  bool apply(const BlockOp& op) {
    const std::size_t n = op.blocks.size();
    std::vector<std::vector<Choice>> opts;
    opts.reserve(n);
    for (const auto& block : op.blocks) opts.push_back(choices(block));
    std::vector<std::size_t> pick(n, 0);
    bool changed = false;
    const std::size_t d = window_.size();
    for (;;) {
      int nonzero = 0;
      for (std::size_t k = 0; k < n; ++k) nonzero += pick[k] != 0;
      if (nonzero >= 2) {
        Dense v(d, Rational(0));
        for (std::size_t k = 0; k < n; ++k) {
          const auto& part = opts[k][pick[k]].part;
          for (std::size_t q = 0; q < op.blocks[k].size(); ++q) {
            if (!part[q].is_zero()) v[op.blocks[k][q]] = theta_ * part[q];
          }
        }
        GeneratorDerivation der;
        der.witness = op.witness;
        for (std::size_t k = 0; k < n; ++k) {
          std::vector<Index> block;
          for (int p : op.blocks[k]) block.push_back(window_[p]);
          der.blocks.push_back(std::move(block));
          der.parents.push_back(opts[k][pick[k]].source);
        }
        changed |= accept(std::move(v), std::move(der));
      }
      std::size_t k = 0;
      while (k < n && ++pick[k] == opts[k].size()) pick[k++] = 0;
      if (k == n) break;
    }
    return changed;
  }

  GeneratorSet finish() {
    GeneratorSet out;
    out.window = window_;
    out.theta = theta_;
    std::vector<int> order = live_;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::lexicographical_compare(archive_[b].first.begin(), archive_[b].first.end(),
                                          archive_[a].first.begin(), archive_[a].first.end());
    });
    for (int id : order) {
      out.generators.push_back(sparse(archive_[id].first, window_));
      out.ids.push_back(id);
    }
    out.archive.reserve(archive_.size());
    for (auto& [dense, der] : archive_) out.archive.push_back({sparse(dense, window_), std::move(der)});
    return out;
  }

  std::vector<Index> window_;
  std::vector<BlockOp> ops_;
  Rational theta_;
  Caps caps_;
  std::vector<std::pair<Dense, GeneratorDerivation>> archive_;
  std::vector<int> live_;
};

// Closure results depend only on (θ, window, block ops); memoized
// process-wide.
class ClosureCache {
 public:
  using Key = std::tuple<std::string, std::vector<Index>, std::vector<std::pair<Mask, std::vector<std::vector<int>>>>>;

  std::shared_ptr<const GeneratorSet> find(const Key& key) {
    std::lock_guard lock(mu_);
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : it->second;
  }

  void insert(Key key, std::shared_ptr<const GeneratorSet> value) {
    std::lock_guard lock(mu_);
    if (entries_.size() >= 4096) entries_.clear();
    entries_.emplace(std::move(key), std::move(value));
  }

 private:
  std::mutex mu_;
  std::map<Key, std::shared_ptr<const GeneratorSet>> entries_;
};

ClosureCache& cache() {
  static ClosureCache instance;
  return instance;
}

}  // namespace

GeneratorSet enumerate_generators_on(std::span<const Mask> restriction, std::vector<Index> window,
                                     const Theta& theta, const Caps& caps) {
  std::sort(window.begin(), window.end());
  window.erase(std::unique(window.begin(), window.end()), window.end());
  if (window.empty()) throw InputError("enumerate_generators: empty window");
  if (window.front() < 1) throw InputError("enumerate_generators: window indices must be positive");
  if (window.back() > kMaxLevel) throw InputError("enumerate_generators: window index beyond 62");
  if (static_cast<int>(window.size()) > caps.generator_dimension) {
    throw ResourceError("enumerate_generators: dimension " + std::to_string(window.size()) + " exceeds cap " +
                        std::to_string(caps.generator_dimension));
  }
  auto ops = block_ops(restriction, window);
  ClosureCache::Key key{theta.value().str(), window, {}};
  for (const auto& op : ops) std::get<2>(key).emplace_back(op.witness, op.blocks);
  if (auto hit = cache().find(key)) return *hit;
  auto result = std::make_shared<const GeneratorSet>(Closure(window, std::move(ops), theta.value(), caps).run());
  cache().insert(std::move(key), result);
  return *result;
}

GeneratorSet enumerate_generators_on(const AdmissibilitySystem& system, std::vector<Index> window, const Theta& theta,
                                     const Caps& caps) {
  if (window.empty()) throw InputError("enumerate_generators: empty window");
  const Index level = *std::max_element(window.begin(), window.end());
  if (level < 1 || level > kMaxLevel) throw InputError("enumerate_generators: window index outside [1, 62]");
  if (static_cast<int>(window.size()) > caps.generator_dimension) {
    throw ResourceError("enumerate_generators: dimension " + std::to_string(window.size()) + " exceeds cap " +
                        std::to_string(caps.generator_dimension));
  }
  const auto restriction = system.restriction(level);
  return enumerate_generators_on(restriction, std::move(window), theta, caps);
}

GeneratorSet enumerate_generators(const AdmissibilitySystem& system, int level, const Theta& theta, const Caps& caps) {
  if (level < 1) throw InputError("enumerate_generators: level must be positive");
  if (level > caps.generator_dimension) {
    throw ResourceError("enumerate_generators: level " + std::to_string(level) + " exceeds cap " +
                        std::to_string(caps.generator_dimension));
  }
  std::vector<Index> window(level);
  for (int i = 0; i < level; ++i) window[i] = i + 1;
  return enumerate_generators_on(system, std::move(window), theta, caps);
}

std::string check_derivation(const GeneratorRecord& record, const AdmissibilitySystem& system, const Theta& theta,
                             const std::vector<const RationalVector*>& parents) {
  const auto& der = record.derivation;
  if (der.is_basis()) {
    if (record.vector != RationalVector::unit(der.basis)) return "basis record does not hold e_" + std::to_string(der.basis);
    return {};
  }
  if (der.blocks.size() < 2) return "derivation needs at least two blocks";
  if (parents.size() != der.blocks.size()) return "derivation parent count mismatch";
  try {
    const SuccessiveFamily family(der.blocks);
    const auto restriction = system.restriction(family.max_index());
    const Mask w = der.witness & prefix_mask(family.max_index());
    if (!std::binary_search(restriction.begin(), restriction.end(), w)) {
      return "witness set is not a member of the restriction";
    }
    const std::vector<Mask> only{w};
    if (!is_admissible(only, family).admissible) return "block family not admissible for its witness";
  } catch (const InputError& e) {
    return e.what();
  }
  RationalVector expected;
  for (std::size_t k = 0; k < der.blocks.size(); ++k) {
    if (parents[k] != nullptr) expected += restrict(der.blocks[k], *parents[k]);
  }
  expected *= theta.value();
  if (expected != record.vector) return "derived vector does not match the block combination";
  return {};
}

}  // namespace tsl
