#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rftrlp/error.hpp"
#include "rftrlp/instance.hpp"

namespace rftrlp {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

std::string field_error(const std::string& field, const std::string& what) { return "field '" + field + "': " + what; }

std::int64_t as_int(const json& node, const std::string& field) {
  if (!node.is_number_integer()) throw ParseError(field_error(field, "expected an integer"));
  if (node.is_number_unsigned() && node.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    throw ParseError(field_error(field, "integer out of range"));
  }
  return node.get<std::int64_t>();
}

const json& require(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(field_error(key, "missing"));
  return *it;
}

int line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

std::string to_text(const Instance& inst) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"version\": " << kFormatVersion << ",\n";
  out << "  \"label\": " << json(inst.label).dump() << ",\n";
  out << "  \"n\": " << inst.network.node_count() << ",\n";
  out << "  \"d_max\": " << inst.network.d_max() << ",\n";
  out << "  \"gamma\": " << inst.gamma << ",\n";
  out << "  \"edges\": [";
  const auto edges = inst.network.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out << (i ? ",\n    " : "\n    ") << '[' << edges[i].u << ", " << edges[i].v << ", " << edges[i].length << ']';
  }
  out << (edges.empty() ? "],\n" : "\n  ],\n");
  out << "  \"scenarios\": [";
  const auto& rows = inst.scenarios.rows();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out << (k ? ",\n    " : "\n    ") << '[';
    for (std::size_t i = 0; i < rows[k].size(); ++i) out << (i ? ", " : "") << rows[k][i];
    out << ']';
  }
  out << (rows.empty() ? "],\n" : "\n  ],\n");
  out << "  \"seed\": " << inst.seed << "\n";
  out << "}\n";
  return out.str();
}

Instance from_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("line 1: instance document must be a JSON object");

  static const char* kKnown[] = {"version", "label", "n", "d_max", "gamma", "edges", "scenarios", "seed"};
  for (const auto& item : doc.items()) {
    if (std::find_if(std::begin(kKnown), std::end(kKnown), [&](const char* k) { return item.key() == k; }) ==
        std::end(kKnown)) {
      throw ParseError(field_error(item.key(), "unknown field"));
    }
  }

  if (as_int(require(doc, "version"), "version") != kFormatVersion) {
    throw ParseError(field_error("version", "unsupported version (expected 1)"));
  }
  const auto& label_node = require(doc, "label");
  if (!label_node.is_string()) throw ParseError(field_error("label", "expected a string"));
  const auto n = as_int(require(doc, "n"), "n");
  const auto d_max = as_int(require(doc, "d_max"), "d_max");
  const auto gamma = as_int(require(doc, "gamma"), "gamma");
  const auto& seed_node = require(doc, "seed");
  if (!seed_node.is_number_integer() || (seed_node.is_number_integer() && !seed_node.is_number_unsigned() &&
                                          seed_node.get<std::int64_t>() < 0)) {
    throw ParseError(field_error("seed", "expected a nonnegative 64-bit integer"));
  }
  if (n < 1 || n > 100000) throw ValidationError(field_error("n", "must be in 1..100000"));
  if (gamma < 0 || gamma > 1000) throw ValidationError(field_error("gamma", "must be in 0..1000"));

  const auto& edges_node = require(doc, "edges");
  if (!edges_node.is_array()) throw ParseError(field_error("edges", "expected an array"));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < edges_node.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const auto& e = edges_node[i];
    if (!e.is_array() || e.size() != 3) throw ParseError(field_error(where, "expected [u, v, length]"));
    edges.push_back({static_cast<NodeId>(as_int(e[0], where + "[0]")), static_cast<NodeId>(as_int(e[1], where + "[1]")),
                     as_int(e[2], where + "[2]")});
  }

  const auto& sc_node = require(doc, "scenarios");
  if (!sc_node.is_array()) throw ParseError(field_error("scenarios", "expected an array"));
  std::vector<std::vector<Cost>> rows;
  for (std::size_t k = 0; k < sc_node.size(); ++k) {
    const std::string where = "scenarios[" + std::to_string(k) + "]";
    const auto& row = sc_node[k];
    if (!row.is_array()) throw ParseError(field_error(where, "expected an array of costs"));
    if (row.size() != static_cast<std::size_t>(n)) {
      throw ValidationError(field_error(where, "has " + std::to_string(row.size()) + " costs but n = " + std::to_string(n)));
    }
    std::vector<Cost> costs;
    for (std::size_t i = 0; i < row.size(); ++i) costs.push_back(as_int(row[i], where + "[" + std::to_string(i) + "]"));
    rows.push_back(std::move(costs));
  }

  Instance inst{Network(static_cast<int>(n), std::move(edges), d_max), ScenarioSet(std::move(rows)),
                static_cast<int>(gamma), seed_node.get<std::uint64_t>(), label_node.get<std::string>()};
  inst.validate();
  return inst;
}

void save(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io", "cannot open " + path.string() + " for writing");
  out << to_text(inst);
  if (!out) throw Error("io", "failed writing " + path.string());
}

Instance load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return from_text(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace rftrlp
