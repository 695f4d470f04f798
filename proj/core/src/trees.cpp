#include "tsl/trees.hpp"

#include <numeric>

#include "tsl/error.hpp"

namespace tsl {

int PeriodicSequence::at(std::size_t k) const {
  if (k < preperiod.size()) return preperiod[k];
  if (period.empty()) throw InputError("index past the end of a finite sequence");
  return period[(k - preperiod.size()) % period.size()];
}

std::vector<int> PeriodicSequence::prefix(std::size_t n) const {
  if (!infinite()) n = std::min(n, preperiod.size());
  std::vector<int> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.push_back(at(k));
  return out;
}

std::vector<Index> tilde(const std::vector<Index>& nu) {
  std::vector<Index> out;
  out.reserve(nu.size());
  Index sum = 0;
  for (Index n : nu) {
    if (n < 1) throw InputError("tilde: sequence entries must be positive");
    sum += n;
    out.push_back(sum);
  }
  return out;
}

namespace {

void check_positive(const std::vector<int>& seq, const char* what) {
  for (int v : seq) {
    if (v < 1) throw InputError(std::string(what) + ": entries must be positive integers");
  }
}

void check_bits(const std::vector<int>& seq) {
  for (int v : seq) {
    if (v != 0 && v != 1) throw InputError("sigma entries must be 0 or 1");
  }
}

long long sum_of(const std::vector<Index>& nu) {
  return std::accumulate(nu.begin(), nu.end(), 0LL);
}

}  // namespace

TreeSpec::TreeSpec() : nodes_{Node{}} {}

TreeSpec::TreeSpec(std::set<Node> nodes, std::vector<PeriodicSequence> branches)
    : branches_(std::move(branches)) {
  nodes_.insert(Node{});
  for (const auto& nu : nodes) {
    check_positive(nu, "tree node");
    for (std::size_t k = 0; k <= nu.size(); ++k) nodes_.insert(Node(nu.begin(), nu.begin() + k));
  }
  for (const auto& b : branches_) {
    if (!b.infinite()) throw InputError("tree branch needs a nonempty period");
    check_positive(b.preperiod, "tree branch");
    check_positive(b.period, "tree branch");
  }
}

bool TreeSpec::contains(const Node& nu) const {
  if (nodes_.count(nu) != 0) return true;
  for (const auto& b : branches_) {
    if (b.prefix(nu.size()) == nu) return true;
  }
  return false;
}

std::set<TreeSpec::Node> TreeSpec::nodes_with_sum_at_most(int level) const {
  std::set<Node> out;
  for (const auto& nu : nodes_) {
    if (sum_of(nu) <= level) out.insert(nu);
  }
  for (const auto& b : branches_) {
    Node prefix;
    long long sum = 0;
    out.insert(prefix);
    for (std::size_t k = 0;; ++k) {
      sum += b.at(k);
      if (sum > level) break;
      prefix.push_back(b.at(k));
      out.insert(prefix);
    }
  }
  return out;
}

Tree2Spec::Tree2Spec() : nodes_{Node{BinaryString{}, {}}} {}

Tree2Spec::Tree2Spec(std::vector<Node> nodes, std::vector<Branch> branches)
    : branches_(std::move(branches)) {
  nodes_.insert(Node{BinaryString{}, {}});
  for (const auto& node : nodes) {
    check_positive(node.nu, "tree node");
    if (node.sigma) {
      if (node.sigma->size() != node.nu.size()) {
        throw InputError("tree node: sigma and nu must have equal length");
      }
      for (auto bit : *node.sigma) {
        if (bit > 1) throw InputError("sigma entries must be 0 or 1");
      }
    }
    for (std::size_t k = 0; k <= node.nu.size(); ++k) {
      Node prefix;
      prefix.nu.assign(node.nu.begin(), node.nu.begin() + k);
      if (node.sigma) prefix.sigma = BinaryString(node.sigma->begin(), node.sigma->begin() + k);
      if (k == 0) prefix.sigma = BinaryString{};
      nodes_.insert(std::move(prefix));
    }
  }
  for (const auto& b : branches_) {
    if (!b.nu.infinite()) throw InputError("tree branch needs a nonempty nu period");
    check_positive(b.nu.preperiod, "tree branch");
    check_positive(b.nu.period, "tree branch");
    if (b.sigma) {
      if (!b.sigma->infinite()) throw InputError("tree branch needs a nonempty sigma period");
      check_bits(b.sigma->preperiod);
      check_bits(b.sigma->period);
    }
  }
}

bool Tree2Spec::contains(const BinaryString& sigma, const std::vector<Index>& nu) const {
  if (sigma.size() != nu.size()) return false;
  if (nu.empty()) return true;
  if (nodes_.count(Node{sigma, nu}) != 0 || nodes_.count(Node{std::nullopt, nu}) != 0) return true;
  for (const auto& b : branches_) {
    if (b.nu.prefix(nu.size()) != nu) continue;
    if (!b.sigma) return true;
    const auto bits = b.sigma->prefix(sigma.size());
    if (std::equal(bits.begin(), bits.end(), sigma.begin(), sigma.end())) return true;
  }
  return false;
}

TreeSpec section(const Tree2Spec& tree, const BinaryString& sigma_prefix, std::optional<std::size_t> depth) {
  const std::size_t d = depth.value_or(sigma_prefix.size());
  if (d > sigma_prefix.size()) {
    throw InputError("section: sigma prefix of length " + std::to_string(sigma_prefix.size()) +
                     " is shorter than the requested depth " + std::to_string(d));
  }
  std::set<TreeSpec::Node> nodes;
  for (const auto& node : tree.nodes()) {
    if (node.nu.size() > d) continue;
    if (node.sigma &&
        !std::equal(node.sigma->begin(), node.sigma->end(), sigma_prefix.begin())) {
      continue;
    }
    nodes.insert(node.nu);
  }
  for (const auto& b : tree.branches()) {
    std::size_t agree = d;
    if (b.sigma) {
      agree = 0;
      while (agree < d && b.sigma->at(agree) == sigma_prefix[agree]) ++agree;
    }
    nodes.insert(b.nu.prefix(agree));
  }
  return TreeSpec(std::move(nodes));
}

}  // namespace tsl
