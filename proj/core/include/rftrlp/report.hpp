#pragma once

#include <optional>
#include <span>
#include <string>

#include "rftrlp/graph.hpp"
#include "rftrlp/instance.hpp"
#include "rftrlp/oracle.hpp"
#include "rftrlp/solver.hpp"

namespace rftrlp {

/// JSON documents written by the command line tool. Every document carries
/// "version": 1 and a "kind"; wall-clock measurements live only under keys
/// named "timings", so stripping those makes reports reproducible.

std::string solution_report(const Instance& inst, const SolveOutcome& outcome);
std::string trace_report(const IterationTrace& trace);
std::string oracle_report(const Instance& inst, Predicate predicate, const std::optional<Solution>& optimum);
std::string check_report(const Instance& inst, Predicate predicate, const NodeSet& chosen, bool feasible);
std::string transform_report(const Network& net, const TransformedGraph& m, const DerivedSets& ds,
                             std::span<const NodePair> failed);
std::string validation_report(const Instance& inst, bool connected, int edge_connectivity);

/// Reads the chosen set back from a solution report.
NodeSet chosen_from_report(const std::string& json_text);

}  // namespace rftrlp
