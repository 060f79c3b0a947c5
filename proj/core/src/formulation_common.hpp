#pragma once

#include <string>
#include <vector>

#include "rftrlp/error.hpp"
#include "rftrlp/graph.hpp"
#include "rftrlp/instance.hpp"
#include "rftrlp/milp/model.hpp"

namespace rftrlp::detail {

inline std::string pair_suffix(NodeId a, NodeId b) { return std::to_string(a) + "_" + std::to_string(b); }

inline void require_connectivity(const Instance& inst) {
  inst.validate();
  if (!edge_connectivity_at_least(inst.network, inst.gamma + 1)) {
    throw ConnectivityError("network is not " + std::to_string(inst.gamma + 1) +
                            "-edge-connected, so no placement survives every admissible edge failure");
  }
}

/// Declares x_1..x_n (binary) and returns indices with a dummy slot 0.
inline std::vector<int> add_node_vars(milp::Model& model, int n) {
  std::vector<int> x(static_cast<std::size_t>(n) + 1, -1);
  for (NodeId i = 1; i <= n; ++i) x[i] = model.add_binary("x_" + std::to_string(i));
  return x;
}

inline int add_epigraph_var(milp::Model& model) { return model.add_continuous("z", 0.0, milp::kInf, 1.0); }

/// Epigraph, domination and FRE rows shared by every model on M.
inline void add_core_rows(milp::Model& model, const Instance& inst, const TransformedGraph& m, const DerivedSets& ds,
                          const std::vector<int>& x, int z) {
  const int n = inst.network.node_count();
  const auto gamma = static_cast<double>(inst.gamma);
  for (std::size_t k = 0; k < inst.scenarios.count(); ++k) {
    std::vector<milp::Term> terms;
    for (NodeId i = 1; i <= n; ++i) terms.push_back({x[i], static_cast<double>(inst.scenarios.cost(k, i))});
    terms.push_back({z, -1.0});
    model.add_constraint("epi_" + std::to_string(k + 1), std::move(terms), milp::Sense::LessEqual, 0.0);
  }
  for (NodeId i = 1; i <= n; ++i) {
    std::vector<milp::Term> terms;
    for (NodeId j : m.neighbors(i)) terms.push_back({x[j], 1.0});
    model.add_constraint("dom_" + std::to_string(i), std::move(terms), milp::Sense::GreaterEqual, gamma + 1.0);
  }
  for (NodeId i : ds.vbar) {
    std::vector<milp::Term> terms;
    for (NodeId j : m.neighbors(i)) terms.push_back({x[j], 1.0});
    if (auto it = ds.nprime.find(i); it != ds.nprime.end()) {
      for (NodeId k : it->second) terms.push_back({x[k], -1.0});
    }
    model.add_constraint("fre_" + std::to_string(i), std::move(terms), milp::Sense::GreaterEqual, gamma);
  }
}

}  // namespace rftrlp::detail
