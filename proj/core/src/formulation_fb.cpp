#include <algorithm>

#include "formulation_common.hpp"
#include "rftrlp/formulation.hpp"

namespace rftrlp {

using milp::Sense;
using milp::Term;

FbModel build_ip_fb(const Instance& inst, const TransformedGraph& m, const DerivedSets& ds) {
  detail::require_connectivity(inst);
  const int n = inst.network.node_count();
  const int families = inst.gamma + 1;
  FbModel out;
  auto& model = out.model;
  auto& vars = out.vars;

  vars.x = detail::add_node_vars(model, n);
  for (NodeId p = 1; p <= n; ++p) {
    for (NodeId q = p + 1; q <= n; ++q) vars.t[{p, q}] = model.add_binary("t_" + detail::pair_suffix(p, q));
  }
  vars.z = detail::add_epigraph_var(model);

  std::vector<std::pair<NodeId, NodeId>> arcs;
  for (const auto& e : m.edges()) {
    arcs.emplace_back(e.u, e.v);
    arcs.emplace_back(e.v, e.u);
  }
  std::sort(arcs.begin(), arcs.end());
  for (int g = 1; g <= families; ++g) {
    for (NodeId p = 1; p <= n; ++p) {
      for (NodeId q = p + 1; q <= n; ++q) {
        for (const auto& [i, j] : arcs) {
          vars.flow[{g, p, q, i, j}] = model.add_continuous(
              "f" + std::to_string(g) + "_" + detail::pair_suffix(p, q) + "_" + detail::pair_suffix(i, j), 0.0, 1.0);
        }
      }
    }
  }

  detail::add_core_rows(model, inst, m, ds, vars.x, vars.z);

  for (NodeId p = 1; p <= n; ++p) {
    for (NodeId q = p + 1; q <= n; ++q) {
      const int t = vars.t.at({p, q});
      const auto pq = detail::pair_suffix(p, q);
      model.add_constraint("mc_" + pq + "_a", {{t, 1.0}, {vars.x[p], -1.0}}, Sense::LessEqual, 0.0);
      model.add_constraint("mc_" + pq + "_b", {{t, 1.0}, {vars.x[q], -1.0}}, Sense::LessEqual, 0.0);
      model.add_constraint("mc_" + pq + "_c", {{t, 1.0}, {vars.x[p], -1.0}, {vars.x[q], -1.0}}, Sense::GreaterEqual,
                           -1.0);

      for (int g = 1; g <= families; ++g) {
        for (NodeId v = 1; v <= n; ++v) {
          std::vector<Term> terms;
          for (NodeId w : m.neighbors(v)) {
            terms.push_back({vars.flow_var(g, p, q, v, w), 1.0});
            terms.push_back({vars.flow_var(g, p, q, w, v), -1.0});
          }
          if (v == p) terms.push_back({t, -1.0});
          if (v == q) terms.push_back({t, 1.0});
          model.add_constraint("cons" + std::to_string(g) + "_" + pq + "_" + std::to_string(v), std::move(terms),
                               Sense::Equal, 0.0);
        }
      }

      for (const auto& [i, j] : arcs) {
        const auto ij = detail::pair_suffix(i, j);
        std::vector<Term> terms;
        for (int g = 1; g <= families; ++g) terms.push_back({vars.flow_var(g, p, q, i, j), 1.0});
        model.add_constraint("dis_" + pq + "_" + ij, std::move(terms), Sense::LessEqual, 1.0);
        std::vector<NodeId> owners{i, j, p, q};
        std::sort(owners.begin(), owners.end());
        owners.erase(std::unique(owners.begin(), owners.end()), owners.end());
        for (int g = 1; g <= families; ++g) {
          const int f = vars.flow_var(g, p, q, i, j);
          for (NodeId w : owners) {
            model.add_constraint("cp" + std::to_string(g) + "_" + pq + "_" + ij + "_" + std::to_string(w),
                                 {{f, 1.0}, {vars.x[w], -1.0}}, Sense::LessEqual, 0.0);
          }
        }
      }
    }
  }
  return out;
}

milp::PartialAssignment warm_start_from_preprocessing(const DerivedSets& ds) {
  milp::PartialAssignment out;
  for (NodeId v : ds.forced_nodes) out["x_" + std::to_string(v)] = 1.0;
  return out;
}

NodeSet chosen_nodes(const std::vector<double>& values, const std::vector<int>& x) {
  NodeSet out;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (values.at(static_cast<std::size_t>(x[i])) > 0.5) out.insert(static_cast<NodeId>(i));
  }
  return out;
}

}  // namespace rftrlp
