#pragma once

#include <vector>

namespace rftrlp {

/// Undirected graph with unit edge capacities for edge-disjoint path counting
/// (Menger). Vertices are 0-based here; callers map node ids themselves.
class UnitFlowGraph {
 public:
  explicit UnitFlowGraph(int vertex_count);

  void add_edge(int a, int b);
  int vertex_count() const { return static_cast<int>(head_.size()); }

  /// Number of edge-disjoint s-t paths, stopping early once `limit` is reached.
  /// Resets any previous flow.
  int max_flow(int s, int t, int limit);

  /// Vertices reachable from the last source in the residual graph of the last
  /// `max_flow` call. When that flow was below its limit this is the source
  /// side of a minimum s-t cut.
  std::vector<bool> source_side() const;

 private:
  struct Arc {
    int to;
    int next;
    int flow;
  };
  bool augment(int s, int t);

  std::vector<int> head_;
  std::vector<Arc> arcs_;
  int last_source_ = -1;
};

}  // namespace rftrlp
