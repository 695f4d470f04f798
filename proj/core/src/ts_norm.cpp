#include "tsl/ts_norm.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

namespace tsl {

namespace {

using Value = std::optional<Rational>;

void take_max(Value& best, const Value& cand) {
  if (cand && (!best || *best < *cand)) best = cand;
}

struct Witness {
  Mask set = 0;
  Index min = 0;
  std::vector<Index> next;  // next[p]: least element >= p, or 0
};

class TsSolver {
 public:
  TsSolver(const RationalVector& x, std::span<const Mask> restriction, const Theta& theta)
      : level_(x.max_index()), theta_(theta.value()) {
    abs_.assign(level_ + 2, Rational(0));
    for (const auto& [i, v] : x) abs_[i] = v.abs();
    std::vector<Mask> clipped;
    clipped.reserve(restriction.size());
    for (Mask a : restriction) clipped.push_back(a & prefix_mask(level_));
    for (Mask a : maximal_members(clipped, 2)) {
      Witness w;
      w.set = a;
      w.min = min_element_of(a);
      w.next.assign(level_ + 2, 0);
      for (Index p = level_; p >= 1; --p) {
        w.next[p] = (a >> (p - 1)) & 1 ? p : w.next[p + 1];
      }
      witnesses_.push_back(std::move(w));
    }
    solve();
  }

  const Rational& value() const { return norm_[1][level_]; }

  TsCertificate certificate(Index a, Index b) const {
    TsCertificate cert;
    cert.value = norm_[a][b];
    if (cert.value.is_zero()) return cert;
    const int choice = choice_[a][b];
    if (choice < 0) {
      cert.kind = TsCertificate::Kind::sup;
      for (Index i = a; i <= b; ++i) {
        if (abs_[i] == cert.value) {
          cert.index = i;
          break;
        }
      }
      return cert;
    }
    const Witness& w = witnesses_[choice];
    cert.kind = TsCertificate::Kind::family;
    cert.witness = w.set;
    const auto [total, intervals] = trace(w, a, b);
    if (theta_ * total != cert.value) throw std::logic_error("ts_norm: certificate trace disagrees with table");
    cert.intervals = intervals;
    for (std::size_t k = 0; k < intervals.size(); ++k) {
      cert.m.push_back(k == 0 ? w.min : w.next[intervals[k - 1].second + 1]);
      cert.children.push_back(certificate(intervals[k].first, intervals[k].second));
    }
    return cert;
  }

 private:
  void solve() {
    const Index L = level_;
    norm_.assign(L + 2, std::vector<Rational>(L + 2));
    choice_.assign(L + 2, std::vector<int>(L + 2, -1));
    std::vector<std::vector<Rational>> sup(L + 2, std::vector<Rational>(L + 2));
    for (Index a = 1; a <= L; ++a) {
      Rational run(0);
      for (Index b = a; b <= L; ++b) {
        run = max(run, abs_[b]);
        sup[a][b] = run;
      }
    }
    const std::size_t W = witnesses_.size();
    // Per witness, for the current right end b:
    //   g1[p]: best sum of >= 1 further intervals whose witness is >= p
    //   g0[p]: same with zero further intervals allowed
    //   m1[s]: max over s' >= s of the best chain whose next interval starts at s'
    //   first[a]: best chain of >= 2 intervals whose first interval starts >= a
    std::vector<std::vector<Value>> g1(W), m1(W), first(W);
    std::vector<std::vector<Rational>> g0(W);
    for (Index b = 1; b <= L; ++b) {
      for (std::size_t k = 0; k < W; ++k) {
        g1[k].assign(L + 2, std::nullopt);
        m1[k].assign(L + 2, std::nullopt);
        first[k].assign(L + 2, std::nullopt);
        g0[k].assign(L + 2, Rational(0));
      }
      for (Index a = b; a >= 1; --a) {
        Rational best = sup[a][b];
        int choice = -1;
        for (std::size_t k = 0; k < W; ++k) {
          Value h2;
          if (a >= witnesses_[k].min) {
            for (Index e = a; e < b; ++e) {
              if (g1[k][e + 1]) take_max(h2, norm_[a][e] + *g1[k][e + 1]);
            }
          }
          first[k][a] = first[k][a + 1];
          take_max(first[k][a], h2);
          if (first[k][a]) {
            Rational cand = theta_ * *first[k][a];
            if (best < cand) {
              best = std::move(cand);
              choice = static_cast<int>(k);
            }
          }
        }
        norm_[a][b] = best;
        choice_[a][b] = choice;
        for (std::size_t k = 0; k < W; ++k) {
          Value h1;
          for (Index e = a; e <= b; ++e) take_max(h1, norm_[a][e] + g0[k][e + 1]);
          m1[k][a] = m1[k][a + 1];
          take_max(m1[k][a], h1);
          const Index nxt = witnesses_[k].next[a];
          g1[k][a] = (nxt != 0 && nxt <= b) ? m1[k][nxt] : std::nullopt;
          g0[k][a] = g1[k][a] ? max(Rational(0), *g1[k][a]) : Rational(0);
        }
      }
    }
  }

  // Best chain of >= 2 intervals inside [a, b] for a fixed witness set, with
  // lowest-start, lowest-end tie breaking.
  std::pair<Rational, std::vector<std::pair<Index, Index>>> trace(const Witness& w, Index a, Index b) const {
    struct Step {
      Value value;
      Index s = 0, e = 0;
    };
    std::map<std::pair<Index, int>, Step> memo;
    // need: number of further intervals still required (0..2); first: first interval.
    std::function<Step(Index, int, bool)> go = [&](Index p, int need, bool is_first) -> Step {
      if (!is_first) {
        if (auto it = memo.find({p, need}); it != memo.end()) return it->second;
      }
      Step best;
      if (need == 0) best.value = Rational(0);
      Index lo = 0;
      if (is_first) {
        lo = std::max(a, w.min);
      } else if (p <= b) {
        lo = w.next[p];
      }
      if (lo != 0) {
        for (Index s = lo; s <= b; ++s) {
          for (Index e = s; e <= b; ++e) {
            const Step rest = go(e + 1, std::max(need - 1, 0), false);
            if (!rest.value) continue;
            Rational total = norm_[s][e] + *rest.value;
            if (!best.value || *best.value < total) {
              best.value = std::move(total);
              best.s = s;
              best.e = e;
            }
          }
        }
      }
      if (!is_first) memo[{p, need}] = best;
      return best;
    };
    std::vector<std::pair<Index, Index>> intervals;
    Step step = go(a, 2, true);
    const Rational total = *step.value;
    int need = 2;
    while (step.s != 0) {
      intervals.emplace_back(step.s, step.e);
      need = std::max(need - 1, 0);
      step = go(step.e + 1, need, false);
    }
    return {total, intervals};
  }

  Index level_;
  Rational theta_;
  std::vector<Rational> abs_;
  std::vector<Witness> witnesses_;
  std::vector<std::vector<Rational>> norm_;
  std::vector<std::vector<int>> choice_;
};

}  // namespace

TsResult ts_norm(const RationalVector& x, std::span<const Mask> restriction, const Theta& theta, const Caps& caps) {
  TsResult out;
  if (x.is_zero()) return out;
  if (x.max_index() > caps.ts_level) {
    throw ResourceError("ts_norm: support reaches index " + std::to_string(x.max_index()) + ", cap is " +
                        std::to_string(caps.ts_level));
  }
  const TsSolver solver(x, restriction, theta);
  out.value = solver.value();
  out.certificate = solver.certificate(1, x.max_index());
  return out;
}

TsResult ts_norm(const RationalVector& x, const AdmissibilitySystem& system, const Theta& theta, const Caps& caps) {
  if (x.is_zero()) return {};
  if (x.max_index() > caps.ts_level) {
    throw ResourceError("ts_norm: support reaches index " + std::to_string(x.max_index()) + ", cap is " +
                        std::to_string(caps.ts_level));
  }
  const auto restriction = system.restriction(x.max_index());
  return ts_norm(x, restriction, theta, caps);
}

namespace {

Rational evaluate(const RationalVector& x, const std::vector<Mask>& restriction, const Rational& theta,
                  const TsCertificate& cert, Index lo, Index hi, std::string& error) {
  switch (cert.kind) {
    case TsCertificate::Kind::zero:
      return Rational(0);
    case TsCertificate::Kind::sup:
      if (cert.index < lo || cert.index > hi) {
        error = "sup leaf index " + std::to_string(cert.index) + " outside its interval";
        return Rational(0);
      }
      return x[cert.index].abs();
    case TsCertificate::Kind::family: {
      if (cert.intervals.size() < 2 || cert.children.size() != cert.intervals.size()) {
        error = "family node needs at least two intervals with one child each";
        return Rational(0);
      }
      std::vector<std::vector<Index>> sets;
      for (const auto& [s, e] : cert.intervals) {
        if (s > e || s < lo || e > hi) {
          error = "interval [" + std::to_string(s) + "," + std::to_string(e) + "] outside its parent";
          return Rational(0);
        }
        std::vector<Index> set;
        for (Index i = s; i <= e; ++i) set.push_back(i);
        sets.push_back(std::move(set));
      }
      try {
        const SuccessiveFamily family(sets);
        const Mask w = cert.witness;
        if (std::find(restriction.begin(), restriction.end(), w) == restriction.end()) {
          error = "witness set is not a member of the restriction";
          return Rational(0);
        }
        const std::vector<Mask> only{w};
        if (!is_admissible(only, family).admissible) {
          error = "interval family is not admissible for its witness";
          return Rational(0);
        }
      } catch (const InputError& e) {
        error = e.what();
        return Rational(0);
      }
      Rational sum(0);
      for (std::size_t k = 0; k < cert.children.size(); ++k) {
        sum += evaluate(x, restriction, theta, cert.children[k], cert.intervals[k].first, cert.intervals[k].second,
                        error);
        if (!error.empty()) return Rational(0);
      }
      return theta * sum;
    }
  }
  return Rational(0);
}

}  // namespace

TsCheck check_ts_certificate(const RationalVector& x, const AdmissibilitySystem& system, const Theta& theta,
                             const TsCertificate& certificate) {
  TsCheck out;
  const Index level = x.max_index();
  if (level == 0) {
    out.ok = certificate.kind == TsCertificate::Kind::zero && certificate.value.is_zero();
    if (!out.ok) out.message = "zero vector needs an empty certificate";
    return out;
  }
  const auto restriction = system.restriction(level);
  std::string error;
  // Recompute every node value and compare against the stored ones.
  std::function<Rational(const TsCertificate&, Index, Index)> walk = [&](const TsCertificate& c, Index lo,
                                                                         Index hi) -> Rational {
    const Rational v = evaluate(x, restriction, theta.value(), c, lo, hi, error);
    if (error.empty() && c.value != v) {
      error = "node claims " + c.value.str() + " but re-evaluates to " + v.str();
    }
    if (error.empty() && c.kind == TsCertificate::Kind::family) {
      for (std::size_t k = 0; k < c.children.size() && error.empty(); ++k) {
        walk(c.children[k], c.intervals[k].first, c.intervals[k].second);
      }
    }
    return v;
  };
  out.value = walk(certificate, 1, level);
  if (!error.empty()) {
    out.message = error;
    return out;
  }
  out.ok = true;
  return out;
}

}  // namespace tsl
