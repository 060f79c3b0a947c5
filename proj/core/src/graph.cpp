#include "rftrlp/graph.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "rftrlp/error.hpp"
#include "rftrlp/unit_flow.hpp"

namespace rftrlp {

// ---------------------------------------------------------------- NodeSet

NodeSet::NodeSet(std::initializer_list<NodeId> ids) : NodeSet(std::vector<NodeId>(ids)) {}

NodeSet::NodeSet(std::vector<NodeId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

NodeSet NodeSet::from_mask(std::uint64_t mask) {
  NodeSet out;
  for (int bit = 0; bit < 64; ++bit) {
    if (mask & (std::uint64_t{1} << bit)) out.ids_.push_back(bit + 1);
  }
  return out;
}

std::uint64_t NodeSet::to_mask() const {
  std::uint64_t mask = 0;
  for (NodeId v : ids_) {
    if (v < 1 || v > 64) throw std::out_of_range("NodeSet::to_mask: node id outside 1..64");
    mask |= std::uint64_t{1} << (v - 1);
  }
  return mask;
}

bool NodeSet::contains(NodeId v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }

void NodeSet::insert(NodeId v) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
  if (it == ids_.end() || *it != v) ids_.insert(it, v);
}

void NodeSet::erase(NodeId v) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
  if (it != ids_.end() && *it == v) ids_.erase(it);
}

bool NodeSet::is_subset_of(const NodeSet& other) const {
  return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

NodeSet NodeSet::set_union(const NodeSet& other) const {
  NodeSet out;
  std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(), std::back_inserter(out.ids_));
  return out;
}

NodeSet NodeSet::set_difference(const NodeSet& other) const {
  NodeSet out;
  std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                      std::back_inserter(out.ids_));
  return out;
}

std::string NodeSet::to_string() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < ids_.size(); ++i) out << (i ? "," : "") << ids_[i];
  out << '}';
  return out.str();
}

// ---------------------------------------------------------------- Network

Network::Network(int node_count, std::vector<Edge> edges, Length d_max)
    : node_count_(node_count), d_max_(d_max), edges_(std::move(edges)) {
  if (node_count_ < 1) throw ValidationError("network needs at least one node");
  if (d_max_ <= 0) throw ValidationError("d_max must be positive");
  for (auto& e : edges_) {
    if (e.u < 1 || e.u > node_count_ || e.v < 1 || e.v > node_count_) {
      throw ValidationError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") references a node outside 1.." + std::to_string(node_count_));
    }
    if (e.u == e.v) throw ValidationError("self-loop at node " + std::to_string(e.u));
    if (e.length <= 0) {
      throw ValidationError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") has non-positive length");
    }
    if (e.length > d_max_) {
      throw ValidationError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") length " +
                            std::to_string(e.length) + " exceeds d_max " + std::to_string(d_max_));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      throw ValidationError("parallel edge (" + std::to_string(edges_[i].u) + "," +
                            std::to_string(edges_[i].v) + ")");
    }
  }
  adjacency_.assign(static_cast<std::size_t>(node_count_), {});
  for (const auto& e : edges_) {
    adjacency_[e.u - 1].push_back(e.v);
    adjacency_[e.v - 1].push_back(e.u);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool Network::has_edge(NodeId a, NodeId b) const { return length(a, b).has_value(); }

std::optional<Length> Network::length(NodeId a, NodeId b) const {
  if (a > b) std::swap(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{a, b}, [](const Edge& e, const auto& key) {
    return std::tie(e.u, e.v) < std::tie(key.first, key.second);
  });
  if (it != edges_.end() && it->u == a && it->v == b) return it->length;
  return std::nullopt;
}

bool Network::operator==(const Network& other) const {
  return node_count_ == other.node_count_ && d_max_ == other.d_max_ && edges_ == other.edges_;
}

// ---------------------------------------------------------------- shortest paths

ShortestPaths::ShortestPaths(int node_count, std::vector<Length> dist, std::vector<NodeId> next)
    : n_(node_count), dist_(std::move(dist)), next_(std::move(next)) {}

std::vector<NodeId> ShortestPaths::path(NodeId s, NodeId t) const {
  if (distance(s, t) >= kUnreachable) return {};
  std::vector<NodeId> out{s};
  for (NodeId cur = s; cur != t;) {
    cur = next_hop(cur, t);
    out.push_back(cur);
  }
  return out;
}

ShortestPaths all_pairs_shortest_paths(const Network& net) {
  const int n = net.node_count();
  const auto idx = [n](NodeId s, NodeId t) {
    return static_cast<std::size_t>(s - 1) * static_cast<std::size_t>(n) + static_cast<std::size_t>(t - 1);
  };
  std::vector<Length> dist(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), kUnreachable);
  for (NodeId v = 1; v <= n; ++v) dist[idx(v, v)] = 0;
  for (const auto& e : net.edges()) {
    dist[idx(e.u, e.v)] = std::min(dist[idx(e.u, e.v)], e.length);
    dist[idx(e.v, e.u)] = std::min(dist[idx(e.v, e.u)], e.length);
  }
  // Floyd-Warshall on exact integers.
  for (NodeId k = 1; k <= n; ++k) {
    for (NodeId i = 1; i <= n; ++i) {
      const Length dik = dist[idx(i, k)];
      if (dik >= kUnreachable) continue;
      for (NodeId j = 1; j <= n; ++j) {
        const Length dkj = dist[idx(k, j)];
        if (dkj >= kUnreachable) continue;
        if (dik + dkj < dist[idx(i, j)]) dist[idx(i, j)] = dik + dkj;
      }
    }
  }
  // Successor rule: from s, step to the smallest neighbor that stays on a
  // shortest path to t. Applied at every hop this yields the
  // lexicographically smallest shortest path.
  std::vector<NodeId> next(dist.size(), 0);
  for (NodeId s = 1; s <= n; ++s) {
    for (NodeId t = 1; t <= n; ++t) {
      if (s == t || dist[idx(s, t)] >= kUnreachable) continue;
      for (NodeId w : net.neighbors(s)) {
        const Length len = *net.length(s, w);
        if (dist[idx(w, t)] < kUnreachable && len + dist[idx(w, t)] == dist[idx(s, t)]) {
          next[idx(s, t)] = w;
          break;
        }
      }
    }
  }
  return ShortestPaths(n, std::move(dist), std::move(next));
}

// ---------------------------------------------------------------- transformed graph

TransformedGraph::TransformedGraph(Network base, std::vector<MEdge> edges)
    : base_(std::move(base)), edges_(std::move(edges)) {
  const int n = base_.node_count();
  std::sort(edges_.begin(), edges_.end(),
            [](const MEdge& a, const MEdge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  adjacency_.assign(static_cast<std::size_t>(n), {});
  index_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& me = edges_[e];
    adjacency_[me.u - 1].push_back(me.v);
    adjacency_[me.v - 1].push_back(me.u);
    index_[static_cast<std::size_t>(me.u - 1) * n + (me.v - 1)] = static_cast<int>(e);
    index_[static_cast<std::size_t>(me.v - 1) * n + (me.u - 1)] = static_cast<int>(e);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

std::size_t TransformedGraph::added_edge_count() const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [](const MEdge& e) { return !e.in_base; }));
}

std::optional<std::size_t> TransformedGraph::edge_index(NodeId a, NodeId b) const {
  const int n = base_.node_count();
  if (a < 1 || b < 1 || a > n || b > n) return std::nullopt;
  const int e = index_[static_cast<std::size_t>(a - 1) * n + (b - 1)];
  if (e < 0) return std::nullopt;
  return static_cast<std::size_t>(e);
}

TransformedGraph build_transformed_graph(const Network& net) {
  const auto sp = all_pairs_shortest_paths(net);
  std::vector<MEdge> edges;
  for (NodeId i = 1; i <= net.node_count(); ++i) {
    for (NodeId j = i + 1; j <= net.node_count(); ++j) {
      const Length d = sp.distance(i, j);
      if (d > net.d_max()) continue;
      MEdge me;
      me.u = i;
      me.v = j;
      if (auto direct = net.length(i, j)) {
        me.in_base = true;
        me.path = {i, j};
        me.path_length = *direct;
      } else {
        me.in_base = false;
        me.path = sp.path(i, j);
        me.path_length = d;
      }
      edges.push_back(std::move(me));
    }
  }
  return TransformedGraph(net, std::move(edges));
}

// ---------------------------------------------------------------- derived sets

DerivedSets derive_sets(const Network& net, const TransformedGraph& m) {
  DerivedSets ds;
  const int n = net.node_count();
  for (NodeId i = 1; i <= n; ++i) {
    if (m.degree(i) > net.degree(i)) ds.vbar.insert(i);
  }
  for (NodeId i : ds.vbar) ds.nprime[i] = NodeSet{};
  for (const auto& me : m.edges()) {
    if (me.in_base) continue;
    for (NodeId end : {me.u, me.v}) {
      auto& set = ds.nprime[end];
      for (NodeId w : me.path) {
        if (w != end) set.insert(w);
      }
    }
  }
  for (NodeId i = 1; i <= n; ++i) {
    for (NodeId j = i + 1; j <= n; ++j) {
      if (!m.adjacent(i, j)) ds.ndc_pairs.push_back({i, j});
    }
  }
  for (NodeId i = 1; i <= n; ++i) {
    if (m.degree(i) == 2) {
      for (NodeId w : m.neighbors(i)) ds.forced_nodes.insert(w);
    }
  }
  return ds;
}

std::map<NodeId, NodeSet> nprime_all_shortest_paths(const Network& net, const TransformedGraph& m) {
  const auto sp = all_pairs_shortest_paths(net);
  std::map<NodeId, NodeSet> out;
  for (const auto& me : m.edges()) {
    if (me.in_base) continue;
    const Length d = sp.distance(me.u, me.v);
    for (NodeId end : {me.u, me.v}) {
      const NodeId other = end == me.u ? me.v : me.u;
      auto& set = out[end];
      for (NodeId w = 1; w <= net.node_count(); ++w) {
        if (w == end) continue;
        const Length a = sp.distance(end, w);
        const Length b = sp.distance(w, other);
        if (a < kUnreachable && b < kUnreachable && a + b == d) set.insert(w);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- connectivity

namespace {

UnitFlowGraph to_flow_graph(const Network& net) {
  UnitFlowGraph g(net.node_count());
  for (const auto& e : net.edges()) g.add_edge(e.u - 1, e.v - 1);
  return g;
}

}  // namespace

bool edge_connectivity_at_least(const Network& net, int k) {
  if (k < 1) throw std::invalid_argument("edge_connectivity_at_least: k must be >= 1");
  if (net.node_count() == 1) return true;
  auto g = to_flow_graph(net);
  // lambda(G) = min over v of maxflow(1, v): any global min cut separates
  // node 1 from some v.
  for (NodeId v = 2; v <= net.node_count(); ++v) {
    if (g.max_flow(0, v - 1, k) < k) return false;
  }
  return true;
}

int edge_connectivity(const Network& net) {
  if (net.node_count() == 1) return std::numeric_limits<int>::max();
  auto g = to_flow_graph(net);
  int best = std::numeric_limits<int>::max();
  for (NodeId v = 2; v <= net.node_count(); ++v) {
    best = std::min(best, g.max_flow(0, v - 1, best));
  }
  return best;
}

Network remove_edges(const Network& net, std::span<const NodePair> failed) {
  std::vector<NodePair> drop(failed.begin(), failed.end());
  for (auto& p : drop) p = NodePair::of(p.u, p.v);
  std::sort(drop.begin(), drop.end());
  for (const auto& p : drop) {
    if (!net.has_edge(p.u, p.v)) {
      throw ValidationError("cannot remove missing edge (" + std::to_string(p.u) + "," + std::to_string(p.v) + ")");
    }
  }
  std::vector<Edge> kept;
  kept.reserve(net.edge_count());
  for (const auto& e : net.edges()) {
    if (!std::binary_search(drop.begin(), drop.end(), NodePair{e.u, e.v})) kept.push_back(e);
  }
  return Network(net.node_count(), std::move(kept), net.d_max());
}

}  // namespace rftrlp
