#include "rftrlp/unit_flow.hpp"

#include <queue>
#include <stdexcept>

namespace rftrlp {

UnitFlowGraph::UnitFlowGraph(int vertex_count) : head_(static_cast<std::size_t>(vertex_count), -1) {}

void UnitFlowGraph::add_edge(int a, int b) {
  // An undirected unit edge is a pair of opposite arcs, each with capacity 1;
  // the pair shares capacity through the skew-symmetric flow value.
  arcs_.push_back({b, head_[a], 0});
  head_[a] = static_cast<int>(arcs_.size()) - 1;
  arcs_.push_back({a, head_[b], 0});
  head_[b] = static_cast<int>(arcs_.size()) - 1;
}

bool UnitFlowGraph::augment(int s, int t) {
  const int n = vertex_count();
  std::vector<int> via(static_cast<std::size_t>(n), -1);
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::queue<int> frontier;
  frontier.push(s);
  seen[s] = true;
  while (!frontier.empty() && !seen[t]) {
    const int u = frontier.front();
    frontier.pop();
    for (int a = head_[u]; a != -1; a = arcs_[a].next) {
      const int w = arcs_[a].to;
      if (!seen[w] && arcs_[a].flow < 1) {
        seen[w] = true;
        via[w] = a;
        frontier.push(w);
      }
    }
  }
  if (!seen[t]) return false;
  for (int w = t; w != s;) {
    const int a = via[w];
    arcs_[a].flow += 1;
    arcs_[a ^ 1].flow -= 1;
    w = arcs_[a ^ 1].to;
  }
  return true;
}

int UnitFlowGraph::max_flow(int s, int t, int limit) {
  if (s == t) throw std::invalid_argument("max_flow: source equals sink");
  for (auto& arc : arcs_) arc.flow = 0;
  last_source_ = s;
  int flow = 0;
  while (flow < limit && augment(s, t)) ++flow;
  return flow;
}

std::vector<bool> UnitFlowGraph::source_side() const {
  std::vector<bool> seen(head_.size(), false);
  if (last_source_ < 0) return seen;
  std::queue<int> frontier;
  frontier.push(last_source_);
  seen[last_source_] = true;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int a = head_[u]; a != -1; a = arcs_[a].next) {
      const int w = arcs_[a].to;
      if (!seen[w] && arcs_[a].flow < 1) {
        seen[w] = true;
        frontier.push(w);
      }
    }
  }
  return seen;
}

}  // namespace rftrlp
