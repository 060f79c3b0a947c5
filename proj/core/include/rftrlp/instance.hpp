#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rftrlp/graph.hpp"

namespace rftrlp {

using Cost = std::int64_t;

/// Discrete node-cost uncertainty set: N rows, one nonnegative cost per node.
class ScenarioSet {
 public:
  ScenarioSet() = default;
  explicit ScenarioSet(std::vector<std::vector<Cost>> rows);

  std::size_t count() const { return rows_.size(); }
  /// Column count; 0 when there are no rows.
  std::size_t node_count() const { return rows_.empty() ? 0 : rows_.front().size(); }
  Cost cost(std::size_t scenario, NodeId node) const { return rows_[scenario][static_cast<std::size_t>(node - 1)]; }
  std::span<const Cost> row(std::size_t scenario) const { return rows_[scenario]; }
  const std::vector<std::vector<Cost>>& rows() const { return rows_; }

  bool operator==(const ScenarioSet&) const = default;

 private:
  std::vector<std::vector<Cost>> rows_;
};

/// One solvable problem: network, cost scenarios and edge-failure budget.
struct Instance {
  Network network;
  ScenarioSet scenarios;
  int gamma = 1;
  std::uint64_t seed = 0;  ///< 0 for hand-built instances
  std::string label;

  /// Throws ValidationError when the scenario width differs from n, there are
  /// no scenarios, or gamma is negative.
  void validate() const;

  bool operator==(const Instance&) const = default;
};

enum class GenFlavor { Gen1, Gen2 };

std::string_view to_string(GenFlavor flavor);
GenFlavor parse_gen_flavor(std::string_view text);

struct GenConfig {
  int n = 10;
  double dens = 0.6;
  int scenarios = 1;
  GenFlavor flavor = GenFlavor::Gen1;
  bool large_mode = false;
  Length d_max = 300;
  int gamma = 1;
  std::uint64_t seed = 1;

  /// Throws ValidationError unless n >= 2, dens in (0,1], scenarios >= 1,
  /// gamma >= 0 and the target edge count reaches n.
  void validate() const;
  std::size_t target_edge_count() const;
  std::string label() const;
};

/// Portable seeded random source. The engine is std::mt19937_64, whose output
/// sequence is fixed by the C++ standard; bounded integers are drawn by
/// rejection sampling (`uniform`) instead of std::uniform_int_distribution,
/// whose algorithm varies between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer on [lo, hi]: draw v until v < floor(2^64 / span) * span,
  /// return lo + v % span.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Random instance per the Gen-1 / Gen-2 recipes:
///  - topology: exactly round(dens * n(n-1)/2) edges sampled uniformly, then
///    repaired to (gamma+1)-edge-connectivity by swapping edges across a
///    violating cut (at most 50*m swaps, GenerationError afterwards);
///  - lengths: Gen-1 uniform {100..300}; Gen-2 {100..120} with probability
///    1/10 else {180..200}; large mode uniform {151..300};
///  - costs: Gen-1 uniform {100..200}; Gen-2 uniform {180..200}.
/// Identical configs produce identical instances.
Instance generate(const GenConfig& cfg);

/// Canonical text form (JSON document, sorted edges, UTF-8, trailing newline).
std::string to_text(const Instance& inst);
/// Parses and validates the canonical form. Syntax problems raise ParseError
/// with line/field context; inconsistent sizes raise ValidationError.
Instance from_text(std::string_view text);

void save(const Instance& inst, const std::filesystem::path& path);
Instance load(const std::filesystem::path& path);

}  // namespace rftrlp
