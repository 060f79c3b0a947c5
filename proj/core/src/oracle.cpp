#include "rftrlp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "rftrlp/error.hpp"
#include "rftrlp/unit_flow.hpp"

namespace rftrlp {

CostSummary robust_cost(const NodeSet& chosen, const ScenarioSet& scenarios) {
  CostSummary out;
  out.per_scenario.resize(scenarios.count(), 0);
  for (std::size_t k = 0; k < scenarios.count(); ++k) {
    for (NodeId v : chosen) out.per_scenario[k] += scenarios.cost(k, v);
  }
  if (!out.per_scenario.empty()) out.robust = *std::max_element(out.per_scenario.begin(), out.per_scenario.end());
  return out;
}

Solution make_solution(NodeSet chosen, const ScenarioSet& scenarios) {
  auto cost = robust_cost(chosen, scenarios);
  return Solution{std::move(chosen), cost.robust, std::move(cost.per_scenario)};
}

// ---------------------------------------------------------------- structural

StructuralChecker::StructuralChecker(const Instance& inst, const TransformedGraph& m, const DerivedSets& ds)
    : n_(inst.network.node_count()), gamma_(inst.gamma), m_(&m) {
  neighbors_.resize(static_cast<std::size_t>(n_) + 1);
  for (NodeId i = 1; i <= n_; ++i) {
    auto nb = m.neighbors(i);
    neighbors_[i].assign(nb.begin(), nb.end());
  }
  for (NodeId i : ds.vbar) {
    auto it = ds.nprime.find(i);
    std::vector<NodeId> np;
    if (it != ds.nprime.end()) np = it->second.ids();
    fre_.emplace_back(i, std::move(np));
  }
}

bool StructuralChecker::domination_and_fre(const std::vector<char>& in_set) const {
  for (NodeId i = 1; i <= n_; ++i) {
    int chosen = 0;
    for (NodeId w : neighbors_[i]) chosen += in_set[w];
    if (chosen < gamma_ + 1) return false;
  }
  for (const auto& [i, np] : fre_) {
    int lhs = 0;
    for (NodeId w : neighbors_[i]) lhs += in_set[w];
    int rhs = gamma_;
    for (NodeId w : np) rhs += in_set[w];
    if (lhs < rhs) return false;
  }
  return true;
}

bool StructuralChecker::pairwise_connected(const std::vector<char>& in_set) const {
  std::vector<int> local(static_cast<std::size_t>(n_) + 1, -1);
  std::vector<NodeId> members;
  for (NodeId i = 1; i <= n_; ++i) {
    if (in_set[i]) {
      local[i] = static_cast<int>(members.size());
      members.push_back(i);
    }
  }
  if (members.size() <= 1) return true;
  UnitFlowGraph g(static_cast<int>(members.size()));
  for (const auto& e : m_->edges()) {
    if (in_set[e.u] && in_set[e.v]) g.add_edge(local[e.u], local[e.v]);
  }
  // Edge connectivity is at least min(lambda(a,u), lambda(a,v)) for every
  // pair u,v, so checking from one representative suffices.
  for (std::size_t b = 1; b < members.size(); ++b) {
    if (g.max_flow(0, static_cast<int>(b), gamma_ + 1) < gamma_ + 1) return false;
  }
  return true;
}

bool StructuralChecker::check(const std::vector<char>& in_set) const {
  return domination_and_fre(in_set) && pairwise_connected(in_set);
}

bool StructuralChecker::operator()(const NodeSet& chosen) const {
  std::vector<char> in_set(static_cast<std::size_t>(n_) + 1, 0);
  for (NodeId v : chosen) {
    if (v < 1 || v > n_) throw ValidationError("node " + std::to_string(v) + " outside 1.." + std::to_string(n_));
    in_set[v] = 1;
  }
  return check(in_set);
}

bool feasible_structural(const Instance& inst, const TransformedGraph& m, const DerivedSets& ds, const NodeSet& chosen) {
  return StructuralChecker(inst, m, ds)(chosen);
}

// ---------------------------------------------------------------- semantic

namespace {

void for_each_failure_set(const Network& net, int gamma, std::vector<NodePair>& current, std::size_t start,
                          const auto& visit) {
  visit(current);
  if (static_cast<int>(current.size()) == gamma) return;
  const auto edges = net.edges();
  for (std::size_t e = start; e < edges.size(); ++e) {
    current.push_back({edges[e].u, edges[e].v});
    for_each_failure_set(net, gamma, current, e + 1, visit);
    current.pop_back();
  }
}

}  // namespace

SemanticChecker::SemanticChecker(const Instance& inst) : n_(inst.network.node_count()) {
  if (n_ > 64) throw SizeGuardError("semantic predicate supports at most 64 nodes");
  if (!edge_connectivity_at_least(inst.network, inst.gamma + 1)) {
    throw ConnectivityError("network is not " + std::to_string(inst.gamma + 1) +
                            "-edge-connected; no placement survives every admissible failure");
  }
  all_ = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
  std::vector<NodePair> current;
  for_each_failure_set(inst.network, inst.gamma, current, 0, [&](const std::vector<NodePair>& failed) {
    const auto damaged = remove_edges(inst.network, failed);
    const auto mf = build_transformed_graph(damaged);
    std::vector<std::uint64_t> adj(static_cast<std::size_t>(n_), 0);
    for (const auto& e : mf.edges()) {
      adj[e.u - 1] |= std::uint64_t{1} << (e.v - 1);
      adj[e.v - 1] |= std::uint64_t{1} << (e.u - 1);
    }
    adjacency_.push_back(std::move(adj));
  });
}

bool SemanticChecker::operator()(std::uint64_t chosen) const {
  for (const auto& adj : adjacency_) {
    if (chosen == 0) {
      for (int v = 0; v < n_; ++v) {
        if ((adj[v] | (std::uint64_t{1} << v)) != all_) return false;
      }
      continue;
    }
    // Induced connectivity: grow from the lowest chosen node inside L.
    std::uint64_t reached = chosen & (~chosen + 1);
    for (std::uint64_t frontier = reached; frontier;) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
      next &= chosen & ~reached;
      reached |= next;
      frontier = next;
    }
    if (reached != chosen) return false;
    for (int v = 0; v < n_; ++v) {
      const std::uint64_t bit = std::uint64_t{1} << v;
      if (!(chosen & bit) && !(adj[v] & chosen)) return false;
    }
  }
  return true;
}

bool feasible_semantic(const Instance& inst, const NodeSet& chosen) { return SemanticChecker(inst)(chosen); }

// ---------------------------------------------------------------- brute force

std::optional<Solution> brute_force_optimum(const Instance& inst, Predicate predicate) {
  inst.validate();
  const int n = inst.network.node_count();
  if (n > kBruteForceMaxNodes) {
    throw SizeGuardError("brute force supports at most " + std::to_string(kBruteForceMaxNodes) + " nodes, got " +
                         std::to_string(n));
  }
  const std::uint32_t count = std::uint32_t{1} << n;
  const auto& sc = inst.scenarios;

  std::vector<Cost> robust(count, 0);
  std::vector<Cost> partial(count, 0);
  for (std::size_t k = 0; k < sc.count(); ++k) {
    // Subset sums by lowest-bit recurrence.
    for (std::uint32_t mask = 1; mask < count; ++mask) {
      const int low = std::countr_zero(mask);
      partial[mask] = partial[mask & (mask - 1)] + sc.cost(k, low + 1);
      robust[mask] = std::max(robust[mask], partial[mask]);
    }
  }
  std::vector<std::uint32_t> order(count);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (robust[a] != robust[b]) return robust[a] < robust[b];
    const int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    if (a == b) return false;
    // Equal sizes: the set holding the lowest differing node sorts first.
    const std::uint32_t low = (a ^ b) & (~(a ^ b) + 1);
    return (a & low) != 0;
  });

  std::optional<std::uint32_t> best;
  if (predicate == Predicate::Structural) {
    const auto m = build_transformed_graph(inst.network);
    const auto ds = derive_sets(inst.network, m);
    const StructuralChecker check(inst, m, ds);
    std::vector<char> in_set(static_cast<std::size_t>(n) + 1, 0);
    for (std::uint32_t mask : order) {
      for (int v = 0; v < n; ++v) in_set[v + 1] = (mask >> v) & 1u;
      if (check.domination_and_fre(in_set) && check.pairwise_connected(in_set)) {
        best = mask;
        break;
      }
    }
  } else {
    const SemanticChecker check(inst);
    for (std::uint32_t mask : order) {
      if (check(mask)) {
        best = mask;
        break;
      }
    }
  }
  if (!best) return std::nullopt;
  return make_solution(NodeSet::from_mask(*best), sc);
}

}  // namespace rftrlp
