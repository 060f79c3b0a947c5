#pragma once

#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "rftrlp/graph.hpp"
#include "rftrlp/instance.hpp"
#include "rftrlp/milp/branch_and_bound.hpp"
#include "rftrlp/milp/model.hpp"

namespace rftrlp {

/// Variable indices of the flow-based model.
struct FbVarMap {
  std::vector<int> x;  ///< x[i] for node i (index 0 unused)
  std::map<NodePair, int> t;
  /// (family gamma in 1..Gamma+1, p, q, i, j) -> flow on arc i->j for pair p<q
  std::map<std::tuple<int, NodeId, NodeId, NodeId, NodeId>, int> flow;
  int z = -1;

  int flow_var(int family, NodeId p, NodeId q, NodeId i, NodeId j) const {
    return flow.at({family, p, q, i, j});
  }
};

struct FbModel {
  milp::Model model;
  FbVarMap vars;
};

/// Flow-based model over M. Variables in order: x_i, t_p_q (p<q), z, then
/// f<gamma>_<p>_<q>_<i>_<j> for every family, pair and arc of M (both
/// orientations), continuous in [0,1]. Rows:
///   epi_k:   sum_i c^k_i x_i - z <= 0
///   dom_i:   sum_{j in N_i} x_j >= Gamma+1
///   fre_i:   sum_{j in N_i} x_j - sum_{k in N'_i} x_k >= Gamma     (i in vbar)
///   mc_p_q_{a,b,c}:  t <= x_p,  t <= x_q,  t >= x_p + x_q - 1
///   cons<gamma>_p_q_v: out-flow - in-flow = t (v=p), -t (v=q), 0 otherwise
///   dis_p_q_i_j:  sum_gamma f<gamma>(i,j) <= 1
///   cp<gamma>_p_q_i_j_<w>:  f <= x_w for w in {i,j,p,q} (duplicates merged)
/// Throws ConnectivityError unless the network is (Gamma+1)-edge-connected.
FbModel build_ip_fb(const Instance& inst, const TransformedGraph& m, const DerivedSets& ds);

/// x_i = 1 for every forced node, keyed by variable name.
milp::PartialAssignment warm_start_from_preprocessing(const DerivedSets& ds);

/// A realized connectivity cut: the chosen side S and the row it produced.
struct GeneratedCut {
  NodeSet side;
  NodeId witness_in = 0;   ///< lowest chosen node in S
  NodeId witness_out = 0;  ///< lowest chosen node outside S
  milp::Constraint row;
};

/// Variable indices of the cut-based model.
struct CbVarMap {
  std::vector<int> x;  ///< x[i] for node i (index 0 unused)
  std::map<NodePair, int> r;
  int z = -1;
  std::vector<GeneratedCut> generated_cuts;
};

struct CbModel {
  milp::Model model;
  CbVarMap vars;
};

/// Cut-based base model: x_i, r_i_j per M-edge, z; rows epi_k, dom_i, fre_i and
/// mc_i_j_{a,b,c} (r <= x_i, r <= x_j, r >= x_i + x_j - 1). Connectivity
/// rows are added lazily by `separate_cuts`.
CbModel build_ip_cb_base(const Instance& inst, const TransformedGraph& m, const DerivedSets& ds);

/// Tracks cuts already emitted during one solve, keyed by (S, witnesses).
class CutRegistry {
 public:
  bool insert(const NodeSet& side, NodeId a, NodeId b) { return seen_.insert({side, a, b}).second; }
  std::size_t size() const { return seen_.size(); }

 private:
  std::set<std::tuple<NodeSet, NodeId, NodeId>> seen_;
};

/// Connectivity separation at an integer point. With L = {i : x_i = 1} and
/// a = min L, for every b in L with fewer than Gamma+1 edge-disjoint a-b paths
/// in M[L], the residual source side S of a minimum cut yields
///   sum_{ij in E_M crossing S} r_ij - (Gamma+1) x_a' - (Gamma+1) x_b' >= -(Gamma+1)
/// with a' = min(S ∩ L) and b' = min(L \ S). Rows already in `registry` are
/// skipped. Empty result iff M[L] has Gamma+1 edge-disjoint paths between all
/// pairs of L (or |L| <= 1).
std::vector<GeneratedCut> separate_cuts(const std::vector<double>& values, const Instance& inst,
                                        const TransformedGraph& m, const CbVarMap& vars, CutRegistry& registry);

/// Nodes with x_i > 0.5.
NodeSet chosen_nodes(const std::vector<double>& values, const std::vector<int>& x);

}  // namespace rftrlp
