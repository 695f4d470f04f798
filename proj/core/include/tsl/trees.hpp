#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "tsl/vector.hpp"

namespace tsl {

/// A finite binary string (entries 0/1), used both for sigma prefixes and
/// for the keys of tree vectors.
using BinaryString = std::vector<std::uint8_t>;

/// Integer sequence of the form preperiod followed by the period repeated
/// forever. An empty period denotes a finite sequence.
struct PeriodicSequence {
  std::vector<int> preperiod;
  std::vector<int> period;

  [[nodiscard]] bool infinite() const { return !period.empty(); }
  /// Length for finite sequences; unspecified for infinite ones.
  [[nodiscard]] std::size_t finite_length() const { return preperiod.size(); }
  /// Entry k (0-based). Precondition: k < finite_length() when finite.
  [[nodiscard]] int at(std::size_t k) const;
  /// The first min(n, length) entries.
  [[nodiscard]] std::vector<int> prefix(std::size_t n) const;

  friend bool operator==(const PeriodicSequence&, const PeriodicSequence&) = default;
};

/// ν̃: the set of partial sums {n1, n1+n2, ...} of a sequence of positive
/// integers, in increasing order.
std::vector<Index> tilde(const std::vector<Index>& nu);

/// Tree on the positive integers: a finite downward-closed node set plus
/// designated eventually-periodic infinite branches.
class TreeSpec {
 public:
  using Node = std::vector<Index>;

  TreeSpec();
  /// Completes downward closure. Throws InputError on non-positive entries
  /// or finite (period-less) branches.
  TreeSpec(std::set<Node> nodes, std::vector<PeriodicSequence> branches = {});

  [[nodiscard]] const std::set<Node>& nodes() const { return nodes_; }
  [[nodiscard]] const std::vector<PeriodicSequence>& branches() const { return branches_; }

  /// True if ν is a stored node or a finite prefix of a designated branch.
  [[nodiscard]] bool contains(const Node& nu) const;
  /// Every node and every branch prefix whose entry sum is at most `level`.
  [[nodiscard]] std::set<Node> nodes_with_sum_at_most(int level) const;

 private:
  std::set<Node> nodes_;
  std::vector<PeriodicSequence> branches_;
};

/// Tree on 2 x N: nodes are pairs (sigma, nu) of equal length. Nodes and
/// branches may leave sigma unspecified, meaning the pair is present for
/// every sigma of the right length.
class Tree2Spec {
 public:
  struct Node {
    std::optional<BinaryString> sigma;
    std::vector<Index> nu;
    friend auto operator<=>(const Node&, const Node&) = default;
  };
  struct Branch {
    std::optional<PeriodicSequence> sigma;
    PeriodicSequence nu;
  };

  Tree2Spec();
  Tree2Spec(std::vector<Node> nodes, std::vector<Branch> branches = {});

  [[nodiscard]] const std::set<Node>& nodes() const { return nodes_; }
  [[nodiscard]] const std::vector<Branch>& branches() const { return branches_; }

  /// True if (sigma, nu) is a node or a prefix of a designated branch.
  [[nodiscard]] bool contains(const BinaryString& sigma, const std::vector<Index>& nu) const;

 private:
  std::set<Node> nodes_;
  std::vector<Branch> branches_;
};

/// Section of a tree on 2 x N along a binary prefix: all ν with
/// |ν| <= depth and (σ|_{|ν|}, ν) in the tree. `depth` defaults to the
/// prefix length; asking for more than the prefix length is an InputError.
TreeSpec section(const Tree2Spec& tree, const BinaryString& sigma_prefix,
                 std::optional<std::size_t> depth = std::nullopt);

}  // namespace tsl
