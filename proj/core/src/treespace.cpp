#include "tsl/treespace.hpp"

#include <algorithm>
#include <set>

#include "tsl/lp.hpp"

namespace tsl {

Rational TreeVector::operator[](const BinaryString& key) const {
  const auto it = coords_.find(key);
  return it == coords_.end() ? Rational(0) : it->second;
}

void TreeVector::set(const BinaryString& key, const Rational& value) {
  if (key.empty()) throw InputError("tree vector keys must be nonempty binary strings");
  for (auto bit : key) {
    if (bit > 1) throw InputError("tree vector keys must be binary");
  }
  if (value.is_zero()) {
    coords_.erase(key);
  } else {
    coords_[key] = value;
  }
}

std::size_t TreeVector::max_length() const {
  std::size_t out = 0;
  for (const auto& [key, v] : coords_) out = std::max(out, key.size());
  return out;
}

TreeVector& TreeVector::operator+=(const TreeVector& rhs) {
  for (const auto& [key, v] : rhs.coords_) set(key, (*this)[key] + v);
  return *this;
}

TreeVector& TreeVector::operator*=(const Rational& s) {
  if (s.is_zero()) {
    coords_.clear();
    return *this;
  }
  for (auto& [key, v] : coords_) v *= s;
  return *this;
}

Rational inner(const TreeVector& f, const TreeVector& x) {
  Rational sum(0);
  for (const auto& [key, v] : f) {
    if (const auto it = x.coords().find(key); it != x.coords().end()) sum += v * it->second;
  }
  return sum;
}

std::vector<BinaryString> relevant_branches(const TreeVector& x) {
  const std::size_t L = x.max_length();
  std::set<BinaryString> out;
  const auto& keys = x.coords();
  for (auto it = keys.begin(); it != keys.end(); ++it) {
    // Keys sort lexicographically, so any extension of this key follows it directly.
    const auto next = std::next(it);
    const bool is_prefix = next != keys.end() && next->first.size() > it->first.size() &&
                           std::equal(it->first.begin(), it->first.end(), next->first.begin());
    if (is_prefix) continue;
    BinaryString padded = it->first;
    padded.resize(L, 0);
    out.insert(std::move(padded));
  }
  return {out.begin(), out.end()};
}

RationalVector branch_restriction(const TreeVector& x, const BinaryString& sigma) {
  RationalVector out;
  BinaryString prefix;
  for (std::size_t l = 1; l <= sigma.size(); ++l) {
    prefix.push_back(sigma[l - 1]);
    out.set(static_cast<Index>(l), x[prefix]);
  }
  return out;
}

TreeVector branch_embed(const std::vector<Rational>& lambda, const BinaryString& sigma) {
  if (lambda.size() > sigma.size()) {
    throw InputError("branch_embed: " + std::to_string(lambda.size()) + " coefficients for a prefix of length " +
                     std::to_string(sigma.size()));
  }
  TreeVector out;
  for (std::size_t l = 1; l <= lambda.size(); ++l) {
    out.set(BinaryString(sigma.begin(), sigma.begin() + static_cast<long>(l)), lambda[l - 1]);
  }
  return out;
}

AdmissibilitySystem section_system(const Tree2Spec& tree, const BinaryString& sigma) {
  return AdmissibilitySystem::from_tree(section(tree, sigma));
}

TreeNormResult tree_norm(const TreeVector& x, const Tree2Spec& tree, const Theta& theta, const Caps& caps) {
  TreeNormResult out;
  bool have = false;
  for (const auto& sigma : relevant_branches(x)) {
    const RationalVector u = branch_restriction(x, sigma);
    GaugeResult g = tss_gauge(u, section_system(tree, sigma), theta, caps);
    out.branches.push_back({sigma, g.value});
    if (!have || out.value < g.value) {
      have = true;
      out.value = g.value;
      out.branch = sigma;
      out.certificate = std::move(g.certificate);
    }
  }
  return out;
}

TreeDualResult tree_dual_norm(const TreeVector& f, const Tree2Spec& tree, const Theta& theta, const Caps& caps) {
  TreeDualResult out;
  if (f.is_zero()) return out;
  std::vector<BinaryString> keys;
  std::map<BinaryString, std::size_t> key_index;
  for (const auto& [key, v] : f) {
    key_index.emplace(key, keys.size());
    keys.push_back(key);
  }
  const std::size_t K = keys.size();

  struct BranchBlock {
    std::vector<Index> positions;
    std::vector<std::size_t> key_of;  // per position
    GeneratorSet gens;
  };
  std::vector<BranchBlock> blocks;
  std::size_t columns = K;
  for (const auto& sigma : relevant_branches(f)) {
    BranchBlock b;
    BinaryString prefix;
    for (std::size_t l = 1; l <= sigma.size(); ++l) {
      prefix.push_back(sigma[l - 1]);
      if (auto it = key_index.find(prefix); it != key_index.end()) {
        b.positions.push_back(static_cast<Index>(l));
        b.key_of.push_back(it->second);
      }
    }
    b.gens = enumerate_generators_on(section_system(tree, sigma), b.positions, theta, caps);
    columns += b.gens.size() + b.positions.size() + 1;
    blocks.push_back(std::move(b));
  }

  // Columns: w_η (K), then per branch: c_g, slack per position, slack for Σc <= 1.
  LPProblem lp;
  lp.objective.assign(columns, Rational(0));
  lp.nonnegative.assign(columns, true);
  for (std::size_t k = 0; k < K; ++k) lp.objective[k] = -f[keys[k]].abs();
  std::size_t col = K;
  for (const auto& b : blocks) {
    const std::size_t G = b.gens.size();
    const std::size_t P = b.positions.size();
    for (std::size_t p = 0; p < P; ++p) {
      std::vector<Rational> row(columns, Rational(0));
      for (std::size_t g = 0; g < G; ++g) row[col + g] = b.gens.generators[g][b.positions[p]];
      row[b.key_of[p]] = Rational(-1);
      row[col + G + p] = Rational(-1);
      lp.constraints.push_back(std::move(row));
      lp.rhs.emplace_back(0);
    }
    std::vector<Rational> row(columns, Rational(0));
    for (std::size_t g = 0; g < G; ++g) row[col + g] = Rational(1);
    row[col + G + P] = Rational(1);
    lp.constraints.push_back(std::move(row));
    lp.rhs.emplace_back(1);
    col += G + P + 1;
  }
  const LPSolution sol = lp_solve(lp);
  if (sol.status != LPStatus::optimal) throw std::logic_error("tree_dual_norm: LP not optimal");
  out.value = -sol.value;
  for (std::size_t k = 0; k < K; ++k) {
    const Rational w = sol.primal[k];
    out.witness.set(keys[k], f[keys[k]].sign() < 0 ? -w : w);
  }
  return out;
}

}  // namespace tsl
