#include "formulation_common.hpp"
#include "rftrlp/formulation.hpp"
#include "rftrlp/unit_flow.hpp"

namespace rftrlp {

using milp::Sense;
using milp::Term;

CbModel build_ip_cb_base(const Instance& inst, const TransformedGraph& m, const DerivedSets& ds) {
  detail::require_connectivity(inst);
  CbModel out;
  auto& model = out.model;
  auto& vars = out.vars;
  vars.x = detail::add_node_vars(model, inst.network.node_count());
  for (const auto& e : m.edges()) vars.r[{e.u, e.v}] = model.add_binary("r_" + detail::pair_suffix(e.u, e.v));
  vars.z = detail::add_epigraph_var(model);
  detail::add_core_rows(model, inst, m, ds, vars.x, vars.z);
  for (const auto& e : m.edges()) {
    const int r = vars.r.at({e.u, e.v});
    const auto uv = detail::pair_suffix(e.u, e.v);
    model.add_constraint("mc_" + uv + "_a", {{r, 1.0}, {vars.x[e.u], -1.0}}, Sense::LessEqual, 0.0);
    model.add_constraint("mc_" + uv + "_b", {{r, 1.0}, {vars.x[e.v], -1.0}}, Sense::LessEqual, 0.0);
    model.add_constraint("mc_" + uv + "_c", {{r, 1.0}, {vars.x[e.u], -1.0}, {vars.x[e.v], -1.0}}, Sense::GreaterEqual,
                         -1.0);
  }
  return out;
}

std::vector<GeneratedCut> separate_cuts(const std::vector<double>& values, const Instance& inst,
                                        const TransformedGraph& m, const CbVarMap& vars, CutRegistry& registry) {
  const NodeSet chosen = chosen_nodes(values, vars.x);
  std::vector<GeneratedCut> cuts;
  if (chosen.size() <= 1) return cuts;
  const int n = inst.network.node_count();
  const int need = inst.gamma + 1;
  std::vector<int> local(static_cast<std::size_t>(n) + 1, -1);
  const auto& members = chosen.ids();
  for (std::size_t k = 0; k < members.size(); ++k) local[members[k]] = static_cast<int>(k);
  UnitFlowGraph g(static_cast<int>(members.size()));
  for (const auto& e : m.edges()) {
    if (local[e.u] >= 0 && local[e.v] >= 0) g.add_edge(local[e.u], local[e.v]);
  }
  for (std::size_t b = 1; b < members.size(); ++b) {
    if (g.max_flow(0, static_cast<int>(b), need) >= need) continue;
    const auto reach = g.source_side();
    NodeSet side;
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (reach[k]) side.insert(members[k]);
    }
    NodeId a_w = 0, b_w = 0;
    for (NodeId v : members) {
      if (side.contains(v)) {
        if (!a_w) a_w = v;
      } else if (!b_w) {
        b_w = v;
      }
    }
    if (!registry.insert(side, a_w, b_w)) continue;
    std::vector<Term> terms;
    for (const auto& e : m.edges()) {
      if (side.contains(e.u) != side.contains(e.v)) terms.push_back({vars.r.at({e.u, e.v}), 1.0});
    }
    terms.push_back({vars.x[a_w], -static_cast<double>(need)});
    terms.push_back({vars.x[b_w], -static_cast<double>(need)});
    std::string name = "cut_" + std::to_string(registry.size());
    cuts.push_back(GeneratedCut{side, a_w, b_w,
                                milp::Model::normalized({std::move(name), std::move(terms), Sense::GreaterEqual,
                                                         -static_cast<double>(need)})});
  }
  return cuts;
}

}  // namespace rftrlp
