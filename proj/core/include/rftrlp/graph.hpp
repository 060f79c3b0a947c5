#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rftrlp {

/// Node identifiers are 1-based and contiguous (1..n).
using NodeId = int;
/// Integer distance units; no floating-point lengths anywhere.
using Length = std::int64_t;

/// Distance sentinel for node pairs that are not connected.
inline constexpr Length kUnreachable = std::numeric_limits<Length>::max() / 4;

/// Unordered node pair stored with u < v.
struct NodePair {
  NodeId u = 0;
  NodeId v = 0;

  static NodePair of(NodeId a, NodeId b) { return a < b ? NodePair{a, b} : NodePair{b, a}; }
  auto operator<=>(const NodePair&) const = default;
};

/// Sorted set of node ids with value semantics.
class NodeSet {
 public:
  NodeSet() = default;
  NodeSet(std::initializer_list<NodeId> ids);
  explicit NodeSet(std::vector<NodeId> ids);

  static NodeSet from_mask(std::uint64_t mask);
  /// Bit (id-1) set for every member; requires all ids <= 64.
  std::uint64_t to_mask() const;

  bool contains(NodeId v) const;
  void insert(NodeId v);
  void erase(NodeId v);
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }
  const std::vector<NodeId>& ids() const { return ids_; }

  bool is_subset_of(const NodeSet& other) const;
  NodeSet set_union(const NodeSet& other) const;
  NodeSet set_difference(const NodeSet& other) const;

  std::string to_string() const;

  auto operator<=>(const NodeSet&) const = default;
  bool operator==(const NodeSet&) const = default;

 private:
  std::vector<NodeId> ids_;
};

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  Length length = 0;

  bool operator==(const Edge&) const = default;
};

/// Physical topology G = (V, E, D) with reach limit d_max.
///
/// Construction validates: n >= 1, endpoints in 1..n, no self-loops, no
/// parallel edges, positive lengths, and every length <= d_max (longer links
/// cannot carry a signal and are rejected instead of being dropped).
/// Edges are stored canonically (u < v, lexicographic order).
class Network {
 public:
  Network(int node_count, std::vector<Edge> edges, Length d_max);

  int node_count() const { return node_count_; }
  Length d_max() const { return d_max_; }
  std::span<const Edge> edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  bool has_edge(NodeId a, NodeId b) const;
  std::optional<Length> length(NodeId a, NodeId b) const;
  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_[v - 1]; }
  int degree(NodeId v) const { return static_cast<int>(adjacency_[v - 1].size()); }

  bool operator==(const Network& other) const;

 private:
  int node_count_;
  Length d_max_;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
};

/// Exact all-pairs distances plus a successor matrix that reconstructs the
/// lexicographically smallest shortest path (lowest node id first at every
/// step) for each reachable pair.
class ShortestPaths {
 public:
  ShortestPaths(int node_count, std::vector<Length> dist, std::vector<NodeId> next);

  int node_count() const { return n_; }
  Length distance(NodeId s, NodeId t) const { return dist_[index(s, t)]; }
  /// Next hop from s toward t on the canonical path; 0 when t is unreachable or s == t.
  NodeId next_hop(NodeId s, NodeId t) const { return next_[index(s, t)]; }
  /// Canonical shortest path s -> t, inclusive; empty when unreachable.
  std::vector<NodeId> path(NodeId s, NodeId t) const;

 private:
  std::size_t index(NodeId s, NodeId t) const {
    return static_cast<std::size_t>(s - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(t - 1);
  }
  int n_;
  std::vector<Length> dist_;
  std::vector<NodeId> next_;
};

ShortestPaths all_pairs_shortest_paths(const Network& net);

/// One edge of the communication graph M together with the base-network path
/// that realizes it.
struct MEdge {
  NodeId u = 0;  ///< u < v
  NodeId v = 0;
  bool in_base = false;       ///< edge already present in G
  Length path_length = 0;     ///< total length of `path`, <= d_max
  std::vector<NodeId> path;   ///< u ... v in the base network
};

/// Communication graph M = (V, E_M): an edge wherever the shortest distance in
/// G is at most d_max. Base edges keep single-hop provenance; added edges keep
/// the canonical shortest path.
class TransformedGraph {
 public:
  TransformedGraph(Network base, std::vector<MEdge> edges);

  const Network& base() const { return base_; }
  int node_count() const { return base_.node_count(); }
  std::span<const MEdge> edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t added_edge_count() const;

  bool adjacent(NodeId a, NodeId b) const { return edge_index(a, b).has_value(); }
  std::optional<std::size_t> edge_index(NodeId a, NodeId b) const;
  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_[v - 1]; }
  int degree(NodeId v) const { return static_cast<int>(adjacency_[v - 1].size()); }

 private:
  Network base_;
  std::vector<MEdge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<int> index_;  // n*n, -1 when not adjacent
};

TransformedGraph build_transformed_graph(const Network& net);

/// Structures derived from (G, M) that the formulations consume.
struct DerivedSets {
  NodeSet vbar;                      ///< nodes whose M-degree exceeds their G-degree
  std::map<NodeId, NodeSet> nprime;  ///< for i in vbar: nodes on provenance paths of i's added edges, minus i
  std::vector<NodePair> ndc_pairs;   ///< pairs not adjacent in M
  NodeSet forced_nodes;              ///< M-neighbors of every node with M-degree exactly 2
};

DerivedSets derive_sets(const Network& net, const TransformedGraph& m);

/// Variant of N'_i that unions every shortest path (not only the canonical one)
/// behind i's added edges. Diagnostic only: the formulations use `derive_sets`.
std::map<NodeId, NodeSet> nprime_all_shortest_paths(const Network& net, const TransformedGraph& m);

/// True iff every node pair admits at least k edge-disjoint paths.
/// A single-node network is k-edge-connected for every k by convention.
bool edge_connectivity_at_least(const Network& net, int k);

/// Global edge connectivity (0 for disconnected graphs). For a single node this
/// returns std::numeric_limits<int>::max().
int edge_connectivity(const Network& net);

/// Copy of `net` without the given edges. Every failed edge must exist.
Network remove_edges(const Network& net, std::span<const NodePair> failed);

}  // namespace rftrlp
