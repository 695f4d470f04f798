#include "tsl/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "tsl/lab.hpp"

namespace tsl {

std::string decimal(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", r.approx());
  return buf;
}

namespace {

std::vector<Index> branch_points(const PeriodicSequence& branch, Index top) {
  for (int v : branch.preperiod) {
    if (v < 1) throw InputError("branch entries must be positive integers");
  }
  for (int v : branch.period) {
    if (v < 1) throw InputError("branch entries must be positive integers");
  }
  std::vector<Index> m;
  Index sum = 0;
  for (std::size_t k = 0; branch.infinite() || k < branch.finite_length(); ++k) {
    sum += branch.at(k);
    if (sum > top) return m;
    m.push_back(sum);
  }
  if (top > 0 && (m.empty() || m.back() < top)) {
    throw InputError("branch partial sums end at " + std::to_string(m.empty() ? 0 : m.back()) +
                     " and do not reach the maximal support index " + std::to_string(top));
  }
  return m;
}

}  // namespace

nlohmann::json C0BlocksResult::to_json() const {
  nlohmann::json blocks_json = nlohmann::json::array();
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    blocks_json.push_back({{"k", k},
                           {"lo", blocks[k].first},
                           {"hi", blocks[k].second},
                           {"tss", block_values[k].str()}});
  }
  return {{"m", m},
          {"blocks", blocks_json},
          {"lower", lower.str()},
          {"value", value.str()},
          {"upper", upper.str()},
          {"holds", holds()}};
}

C0BlocksResult experiment_c0_blocks(const AdmissibilitySystem& system, const PeriodicSequence& branch,
                                    const RationalVector& x, const Theta& theta, const Caps& caps) {
  C0BlocksResult out;
  const Index top = x.max_index();
  out.m = branch_points(branch, top);
  if (!out.m.empty()) {
    const auto restriction = system.restriction(out.m.back());
    if (!std::binary_search(restriction.begin(), restriction.end(), mask_of(out.m))) {
      throw InputError("the branch points are not an admissible set of the system");
    }
  }
  const auto gauge = [&](const RationalVector& v) { return tss_gauge(v, system, theta, caps).value; };
  const auto add = [&](Index lo, Index hi) {
    out.blocks.emplace_back(lo, hi);
    out.block_values.push_back(lo > hi ? Rational(0) : gauge(restrict_interval(lo, hi, x)));
  };
  add(1, out.m.empty() ? top : out.m.front() - 1);
  for (std::size_t k = 0; k < out.m.size(); ++k) {
    const Index hi = k + 1 < out.m.size() ? out.m[k + 1] - 1 : std::max(out.m[k], top);
    add(out.m[k], hi);
  }
  out.value = gauge(x);
  out.lower = Rational(0);
  for (std::size_t k = 1; k < out.block_values.size(); ++k) out.lower = max(out.lower, out.block_values[k]);
  out.upper = out.block_values.front() + theta.inverse() * out.lower;
  return out;
}

bool DichotomyTable::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.holds; });
}

std::string DichotomyTable::csv() const {
  std::ostringstream os;
  os << "series,n,value,value_approx,bound,bound_approx,certified,holds\n";
  for (const auto& r : rows) {
    os << r.series << ',' << r.n << ',' << r.value.str() << ',' << decimal(r.value) << ',' << r.bound.str() << ','
       << decimal(r.bound) << ',' << (r.certified ? "true" : "false") << ',' << (r.holds ? "true" : "false") << '\n';
  }
  return os.str();
}

DichotomyTable experiment_dichotomy(const AdmissibilitySystem& well_founded, const TreeSpec& branch_tree, int nmax,
                                    int kmax, const Theta& theta, const Caps& caps) {
  if (nmax < 0 || kmax < 0) throw InputError("table sizes must be non-negative");
  DichotomyTable table;
  for (int n = 1; n <= nmax; ++n) {
    std::vector<Index> idx;
    for (Index i = n + 1; i <= 2 * n; ++i) idx.push_back(i);
    const RationalVector x = RationalVector::indicator(idx);
    const GaugeResult g = tss_gauge(x, well_founded, theta, caps);
    DichotomyRow row{"well_founded", n, g.value, theta.value() * Rational(n)};
    row.certified = check_gauge_certificate(x, well_founded, theta, g.certificate, caps).ok;
    row.holds = row.certified && g.value >= row.bound;
    table.rows.push_back(std::move(row));
  }
  if (kmax > 0) {
    if (branch_tree.branches().empty()) throw InputError("the branch tree needs a designated branch");
    const PeriodicSequence& branch = branch_tree.branches().front();
    const auto system = AdmissibilitySystem::from_tree(branch_tree);
    std::vector<Index> points;
    Index sum = 0;
    for (int k = 1; k <= kmax; ++k) {
      sum += branch.at(static_cast<std::size_t>(k - 1));
      points.push_back(sum);
      const RationalVector x = RationalVector::indicator(points);
      const C0BlocksResult blocks = experiment_c0_blocks(system, branch, x, theta, caps);
      const GaugeResult g = tss_gauge(x, system, theta, caps);
      DichotomyRow row{"branch", k, g.value, blocks.upper};
      row.certified = check_gauge_certificate(x, system, theta, g.certificate, caps).ok;
      row.holds = row.certified && blocks.holds() && g.value <= row.bound;
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

bool L1ConstantResult::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.c.sign() > 0 && r.c <= Rational(1); });
}

std::string L1ConstantResult::csv() const {
  std::ostringstream os;
  os << "k,c,c_approx,patterns\n";
  for (const auto& r : rows) os << r.k << ',' << r.c.str() << ',' << decimal(r.c) << ',' << r.patterns << '\n';
  return os.str();
}

L1ConstantResult experiment_l1_constant(const Tree2Spec& tree, const std::vector<TreeVector>& functionals,
                                        bool exhaustive, std::uint64_t seed, std::size_t samples, const Theta& theta,
                                        const Caps& caps) {
  constexpr std::size_t kMaxExhaustive = 20;
  if (exhaustive && functionals.size() > kMaxExhaustive) {
    throw InputError("exhaustive sign enumeration supports at most 20 functionals");
  }
  std::set<BinaryString> seen;
  for (std::size_t j = 0; j < functionals.size(); ++j) {
    if (functionals[j].is_zero()) throw InputError("functional " + std::to_string(j) + " is zero");
    for (const auto& [key, v] : functionals[j]) {
      if (!seen.insert(key).second) {
        throw InputError("functional " + std::to_string(j) + " overlaps an earlier functional's support");
      }
    }
  }

  L1ConstantResult out;
  std::vector<TreeVector> unit;
  for (const auto& f : functionals) {
    const Rational scale = tree_dual_norm(f, tree, theta, caps).value;
    out.scales.push_back(scale);
    unit.push_back((Rational(1) / scale) * f);
  }

  TrialRng rng(seed, 0);
  for (std::size_t k = 1; k <= unit.size(); ++k) {
    std::set<std::vector<bool>> patterns;
    if (exhaustive) {
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (k - 1)); ++bits) {
        std::vector<bool> eps(k, false);
        for (std::size_t j = 1; j < k; ++j) eps[j] = ((bits >> (j - 1)) & 1U) != 0;
        patterns.insert(std::move(eps));
      }
    } else {
      for (std::size_t s = 0; s < std::max<std::size_t>(samples, 1); ++s) {
        std::vector<bool> eps(k, false);
        for (std::size_t j = 1; j < k; ++j) eps[j] = rng.coin();
        patterns.insert(std::move(eps));
      }
    }
    std::optional<Rational> best;
    for (const auto& eps : patterns) {
      TreeVector sum;
      for (std::size_t j = 0; j < k; ++j) sum += (eps[j] ? Rational(-1) : Rational(1)) * unit[j];
      const Rational v = tree_dual_norm(sum, tree, theta, caps).value;
      if (!best || v < *best) best = v;
    }
    out.rows.push_back({static_cast<int>(k), *best / Rational(static_cast<long>(k)), patterns.size()});
  }
  return out;
}

}  // namespace tsl
