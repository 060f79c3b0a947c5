#include "rftrlp/report.hpp"

#include <cmath>

#include "json.hpp"
#include "rftrlp/error.hpp"

namespace rftrlp {

namespace {

using json = nlohmann::ordered_json;

json header(const char* kind, const Instance* inst) {
  json doc;
  doc["version"] = 1;
  doc["kind"] = kind;
  if (inst) {
    doc["instance"] = inst->label;
    doc["seed"] = inst->seed;
    doc["n"] = inst->network.node_count();
    doc["gamma"] = inst->gamma;
  }
  return doc;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json nodes(const NodeSet& s) { return json(s.ids()); }

json solution_json(const Solution& s) {
  json out;
  out["chosen"] = nodes(s.chosen);
  out["robust_cost"] = s.robust_cost;
  out["per_scenario_costs"] = s.per_scenario_costs;
  return out;
}

json trace_json(const IterationTrace& trace) {
  json rounds = json::array();
  for (const auto& r : trace.rounds) {
    json row;
    row["round"] = r.round;
    row["master_set"] = nodes(r.master_set);
    row["free_master_set"] = nodes(r.free_master_set);
    row["additions"] = nodes(r.additions);
    row["chosen"] = nodes(r.chosen);
    row["master_objective"] = r.master_objective;
    row["subproblem_objective"] = r.subproblem_objective;
    row["timings"] = {{"master_s", r.master_seconds}, {"subproblem_s", r.subproblem_seconds}};
    rounds.push_back(std::move(row));
  }
  json out;
  out["converged"] = trace.converged;
  out["monotone"] = trace.monotone();
  out["rounds"] = std::move(rounds);
  return out;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

std::string solution_report(const Instance& inst, const SolveOutcome& outcome) {
  auto doc = header("solution", &inst);
  doc["method"] = std::string(to_string(outcome.method));
  doc["lp_only"] = outcome.lp_only;
  doc["status"] = milp::to_string(outcome.status);
  if (outcome.solution) {
    doc["solution"] = solution_json(*outcome.solution);
  } else {
    doc["solution"] = nullptr;
  }
  doc["objective"] = number_or_null(outcome.objective);
  doc["bound"] = number_or_null(outcome.bound);
  doc["nodes"] = outcome.nodes;
  doc["cuts_added"] = outcome.cuts_added;
  doc["lp_iterations"] = outcome.lp_iterations;
  if (outcome.trace) doc["trace"] = trace_json(*outcome.trace);
  doc["diagnostics"] = outcome.diagnostics;
  doc["timings"] = {{"shp_s", outcome.timings.shp_s}, {"ip_s", outcome.timings.ip_s}};
  return dump(doc);
}

std::string trace_report(const IterationTrace& trace) {
  auto doc = header("trace", nullptr);
  doc["trace"] = trace_json(trace);
  return dump(doc);
}

std::string oracle_report(const Instance& inst, Predicate predicate, const std::optional<Solution>& optimum) {
  auto doc = header("oracle", &inst);
  doc["predicate"] = predicate == Predicate::Structural ? "structural" : "semantic";
  doc["status"] = optimum ? "optimal" : "infeasible";
  doc["solution"] = optimum ? solution_json(*optimum) : json(nullptr);
  return dump(doc);
}

std::string check_report(const Instance& inst, Predicate predicate, const NodeSet& chosen, bool feasible) {
  auto doc = header("check", &inst);
  doc["predicate"] = predicate == Predicate::Structural ? "structural" : "semantic";
  doc["chosen"] = nodes(chosen);
  doc["feasible"] = feasible;
  const auto cost = robust_cost(chosen, inst.scenarios);
  doc["robust_cost"] = cost.robust;
  return dump(doc);
}

std::string transform_report(const Network& net, const TransformedGraph& m, const DerivedSets& ds,
                             std::span<const NodePair> failed) {
  auto doc = header("transform", nullptr);
  doc["n"] = net.node_count();
  doc["d_max"] = net.d_max();
  json fail = json::array();
  for (const auto& f : failed) fail.push_back({f.u, f.v});
  doc["failed_edges"] = std::move(fail);
  json edges = json::array();
  for (const auto& e : m.edges()) {
    json row;
    row["u"] = e.u;
    row["v"] = e.v;
    row["in_base"] = e.in_base;
    row["length"] = e.path_length;
    row["path"] = e.path;
    edges.push_back(std::move(row));
  }
  doc["m_edges"] = std::move(edges);
  doc["vbar"] = nodes(ds.vbar);
  json np = json::object();
  for (const auto& [i, s] : ds.nprime) np[std::to_string(i)] = nodes(s);
  doc["nprime"] = std::move(np);
  json ndc = json::array();
  for (const auto& p : ds.ndc_pairs) ndc.push_back({p.u, p.v});
  doc["ndc_pairs"] = std::move(ndc);
  doc["forced_nodes"] = nodes(ds.forced_nodes);
  return dump(doc);
}

std::string validation_report(const Instance& inst, bool connected, int edge_connectivity) {
  auto doc = header("validation", &inst);
  doc["required_edge_connectivity"] = inst.gamma + 1;
  doc["edge_connectivity"] = edge_connectivity;
  doc["valid"] = connected;
  if (!connected) {
    doc["diagnostic"] = "network is not " + std::to_string(inst.gamma + 1) +
                        "-edge-connected: some set of " + std::to_string(edge_connectivity) +
                        " edge failures disconnects it, so no regenerator placement can be fault tolerant";
  }
  return dump(doc);
}

NodeSet chosen_from_report(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("solution report: ") + e.what());
  }
  const auto it = doc.find("solution");
  if (it == doc.end() || it->is_null()) throw ParseError("solution report carries no solution");
  return NodeSet(it->at("chosen").get<std::vector<NodeId>>());
}

}  // namespace rftrlp
