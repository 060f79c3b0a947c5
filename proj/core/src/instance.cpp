#include "rftrlp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "rftrlp/error.hpp"
#include "rftrlp/unit_flow.hpp"

namespace rftrlp {

ScenarioSet::ScenarioSet(std::vector<std::vector<Cost>> rows) : rows_(std::move(rows)) {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (rows_[k].size() != rows_.front().size()) {
      throw ValidationError("scenario row " + std::to_string(k) + " has " + std::to_string(rows_[k].size()) +
                            " entries, expected " + std::to_string(rows_.front().size()));
    }
    for (Cost c : rows_[k]) {
      if (c < 0) throw ValidationError("scenario row " + std::to_string(k) + " has a negative cost");
    }
  }
}

void Instance::validate() const {
  if (scenarios.count() == 0) throw ValidationError("instance has no cost scenarios");
  if (scenarios.node_count() != static_cast<std::size_t>(network.node_count())) {
    throw ValidationError("scenario rows have " + std::to_string(scenarios.node_count()) + " columns but the network has " +
                          std::to_string(network.node_count()) + " nodes");
  }
  if (gamma < 0) throw ValidationError("gamma must be nonnegative");
}

std::string_view to_string(GenFlavor flavor) { return flavor == GenFlavor::Gen1 ? "gen1" : "gen2"; }

GenFlavor parse_gen_flavor(std::string_view text) {
  if (text == "gen1") return GenFlavor::Gen1;
  if (text == "gen2") return GenFlavor::Gen2;
  throw ValidationError("unknown generator flavor '" + std::string(text) + "' (expected gen1 or gen2)");
}

std::size_t GenConfig::target_edge_count() const {
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return static_cast<std::size_t>(std::llround(dens * pairs));
}

void GenConfig::validate() const {
  if (n < 2) throw ValidationError("generator needs n >= 2");
  if (!(dens > 0.0 && dens <= 1.0)) throw ValidationError("dens must lie in (0, 1]");
  if (scenarios < 1) throw ValidationError("generator needs at least one scenario");
  if (gamma < 0) throw ValidationError("gamma must be nonnegative");
  if (d_max <= 0) throw ValidationError("d_max must be positive");
  if (dens * static_cast<double>(n) * static_cast<double>(n - 1) / 2.0 < static_cast<double>(n)) {
    throw ValidationError("dens*n(n-1)/2 must be at least n for a 2-edge-connected topology");
  }
}

std::string GenConfig::label() const {
  std::ostringstream out;
  out << to_string(flavor) << (large_mode ? "L" : "") << "-n" << n << "-d" << dens << "-N" << scenarios << "-g" << gamma
      << "-s" << seed;
  return out.str();
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("Rng::uniform: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());  // full 64-bit range
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % span + 1) % span;
  std::uint64_t v = engine_();
  while (v > limit) v = engine_();
  return lo + static_cast<std::int64_t>(v % span);
}

namespace {

using PairSet = std::set<std::pair<int, int>>;

/// Cut side containing node 1 of some cut with fewer than k crossing edges, or
/// empty when the topology is k-edge-connected.
std::vector<bool> violating_side(int n, const PairSet& edges, int k) {
  UnitFlowGraph g(n);
  for (const auto& [a, b] : edges) g.add_edge(a - 1, b - 1);
  for (int v = 1; v < n; ++v) {
    if (g.max_flow(0, v, k) < k) return g.source_side();
  }
  return {};
}

}  // namespace

Instance generate(const GenConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const int n = cfg.n;
  const int k = cfg.gamma + 1;
  const std::size_t target = cfg.target_edge_count();

  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
  }
  for (std::size_t i = pairs.size(); i-- > 1;) {
    const auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i)));
    std::swap(pairs[i], pairs[j]);
  }
  PairSet edges(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(target));

  const std::size_t max_swaps = 50 * std::max<std::size_t>(target, 1);
  std::size_t swaps = 0;
  for (auto side = violating_side(n, edges, k); !side.empty(); side = violating_side(n, edges, k)) {
    if (++swaps > max_swaps) {
      throw GenerationError("could not reach " + std::to_string(k) + "-edge-connectivity for " + cfg.label() +
                            " within " + std::to_string(max_swaps) + " edge swaps");
    }
    std::vector<std::pair<int, int>> crossing_free;
    for (int a = 1; a <= n; ++a) {
      for (int b = a + 1; b <= n; ++b) {
        if (side[a - 1] != side[b - 1] && !edges.count({a, b})) crossing_free.emplace_back(a, b);
      }
    }
    std::vector<int> degree(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& [a, b] : edges) {
      ++degree[a];
      ++degree[b];
    }
    std::vector<std::pair<int, int>> removable, fallback;
    for (const auto& e : edges) {
      if (side[e.first - 1] != side[e.second - 1]) continue;
      fallback.push_back(e);
      if (degree[e.first] > k && degree[e.second] > k) removable.push_back(e);
    }
    if (removable.empty()) removable = fallback;
    if (crossing_free.empty() || removable.empty()) {
      throw GenerationError("no edge swap can repair the violating cut for " + cfg.label());
    }
    const auto drop = removable[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(removable.size()) - 1))];
    const auto add =
        crossing_free[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(crossing_free.size()) - 1))];
    edges.erase(drop);
    edges.insert(add);
  }

  std::vector<Edge> edge_list;
  edge_list.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    Length len = 0;
    if (cfg.large_mode) {
      len = rng.uniform(151, 300);
    } else if (cfg.flavor == GenFlavor::Gen1) {
      len = rng.uniform(100, 300);
    } else {
      len = rng.uniform(0, 9) == 0 ? rng.uniform(100, 120) : rng.uniform(180, 200);
    }
    edge_list.push_back({a, b, len});
  }

  const Cost cost_lo = cfg.flavor == GenFlavor::Gen1 ? 100 : 180;
  const Cost cost_hi = 200;
  std::vector<std::vector<Cost>> rows(static_cast<std::size_t>(cfg.scenarios));
  for (auto& row : rows) {
    row.resize(static_cast<std::size_t>(n));
    for (auto& c : row) c = rng.uniform(cost_lo, cost_hi);
  }

  Instance inst{Network(n, std::move(edge_list), cfg.d_max), ScenarioSet(std::move(rows)), cfg.gamma, cfg.seed,
                cfg.label()};
  inst.validate();
  return inst;
}

}  // namespace rftrlp
