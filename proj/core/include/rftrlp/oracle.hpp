#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rftrlp/graph.hpp"
#include "rftrlp/instance.hpp"

namespace rftrlp {

/// A regenerator placement with its worst-case cost over the scenario set.
/// robust_cost == max(per_scenario_costs); per_scenario_costs[k] == sum of c^k over chosen.
struct Solution {
  NodeSet chosen;
  Cost robust_cost = 0;
  std::vector<Cost> per_scenario_costs;

  bool operator==(const Solution&) const = default;
};

struct CostSummary {
  std::vector<Cost> per_scenario;
  Cost robust = 0;  ///< 0 for an empty scenario set
};

CostSummary robust_cost(const NodeSet& chosen, const ScenarioSet& scenarios);
Solution make_solution(NodeSet chosen, const ScenarioSet& scenarios);

/// Feasibility as encoded by the integer programs on M:
///  (a) every node has at least gamma+1 chosen M-neighbors;
///  (b) every i in vbar has |N_i ∩ L| >= |N'_i ∩ L| + gamma;
///  (c) every pair of chosen nodes is joined by gamma+1 edge-disjoint paths
///      in the subgraph of M induced by L (unit-capacity max-flow).
class StructuralChecker {
 public:
  StructuralChecker(const Instance& inst, const TransformedGraph& m, const DerivedSets& ds);

  bool operator()(const NodeSet& chosen) const;
  bool domination_and_fre(const std::vector<char>& in_set) const;
  bool pairwise_connected(const std::vector<char>& in_set) const;

 private:
  bool check(const std::vector<char>& in_set) const;

  int n_;
  int gamma_;
  const TransformedGraph* m_;
  std::vector<std::vector<NodeId>> neighbors_;
  std::vector<std::pair<NodeId, std::vector<NodeId>>> fre_;
};

bool feasible_structural(const Instance& inst, const TransformedGraph& m, const DerivedSets& ds, const NodeSet& chosen);

/// Per-failure-scenario communication requirement on G: for every failure set
/// F with |F| <= gamma, on M_F (the communication graph of G minus F) the
/// chosen set induces a connected subgraph and dominates every other node;
/// the empty set is accepted exactly when M_F is complete.
/// Requires a (gamma+1)-edge-connected network (ConnectivityError otherwise)
/// and n <= 64 (SizeGuardError otherwise). Failure graphs are built once.
class SemanticChecker {
 public:
  explicit SemanticChecker(const Instance& inst);

  bool operator()(std::uint64_t chosen_mask) const;
  bool operator()(const NodeSet& chosen) const { return (*this)(chosen.to_mask()); }
  std::size_t failure_scenario_count() const { return adjacency_.size(); }

 private:
  int n_;
  std::uint64_t all_;
  std::vector<std::vector<std::uint64_t>> adjacency_;  // per failure set, per node
};

bool feasible_semantic(const Instance& inst, const NodeSet& chosen);

enum class Predicate { Structural, Semantic };

/// Exhaustive minimum over all 2^n subsets (n <= 16, SizeGuardError above).
/// Ties: lower robust cost, then fewer nodes, then lexicographically smaller
/// sorted node list. std::nullopt when no subset is feasible.
std::optional<Solution> brute_force_optimum(const Instance& inst, Predicate predicate);

inline constexpr int kBruteForceMaxNodes = 16;

}  // namespace rftrlp
