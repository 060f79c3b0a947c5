#pragma once

// Test fixtures and reference implementations that share no code with the
// library: Floyd-Warshall distances, exhaustive edge-cut search, LP vertex
// enumeration, binary MILP enumeration and a small LP-file reader.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rftrlp/graph.hpp"
#include "rftrlp/instance.hpp"
#include "rftrlp/milp/model.hpp"

namespace support {

using namespace rftrlp;

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(RFTRLP_FIXTURE_DIR) / name;
}

inline Instance fixture(const std::string& name) { return load(fixture_path(name)); }

inline Instance make_instance(int n, std::vector<Edge> edges, Length d_max, std::vector<std::vector<Cost>> costs,
                              int gamma = 1) {
  Instance inst{Network(n, std::move(edges), d_max), ScenarioSet(std::move(costs)), gamma, 0, "hand"};
  inst.validate();
  return inst;
}

inline std::vector<Edge> cycle_edges(int n, Length length) {
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i) edges.push_back({i, i % n + 1, length});
  return edges;
}

// ---------------------------------------------------------------- graphs

inline std::vector<std::vector<Length>> floyd_warshall(const Network& net) {
  const int n = net.node_count();
  const Length inf = std::numeric_limits<Length>::max() / 4;
  std::vector<std::vector<Length>> d(n + 1, std::vector<Length>(n + 1, inf));
  for (int i = 1; i <= n; ++i) d[i][i] = 0;
  for (const auto& e : net.edges()) d[e.u][e.v] = d[e.v][e.u] = std::min(d[e.u][e.v], e.length);
  for (int k = 1; k <= n; ++k)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

inline bool connected_without(int n, const std::vector<std::pair<int, int>>& edges, std::uint64_t removed) {
  std::vector<int> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int components = n;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (removed >> e & 1) continue;
    const int a = find(edges[e].first), b = find(edges[e].second);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components <= 1;
}

/// True iff no set of fewer than k edges disconnects the graph, by trying
/// every such set. Meant for m <= ~20.
inline bool exhaustive_k_edge_connected(const Network& net, int k) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : net.edges()) edges.push_back({e.u, e.v});
  const int m = static_cast<int>(edges.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    if (std::popcount(mask) >= k) continue;
    if (!connected_without(net.node_count(), edges, mask)) return false;
  }
  return true;
}

/// Bridges found by deleting each edge in turn.
inline int exhaustive_bridge_count(const Network& net) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : net.edges()) edges.push_back({e.u, e.v});
  int bridges = 0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!connected_without(net.node_count(), edges, std::uint64_t{1} << e)) ++bridges;
  }
  return bridges;
}

// ---------------------------------------------------------------- LP / MILP

/// Solves A x = b by Gaussian elimination with partial pivoting.
inline std::optional<std::vector<double>> gauss(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (std::abs(a[p][c]) < 1e-10) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      if (f == 0.0) continue;
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

/// Optimum of a bounded LP (integrality ignored) by enumerating every vertex.
/// Returns nullopt when no vertex is feasible. Exponential; for a handful of
/// variables and rows only.
inline std::optional<double> lp_vertex_optimum(const milp::Model& model, double tol = 1e-7) {
  const std::size_t n = model.variable_count();
  struct Half {
    std::vector<double> a;
    double b;
  };  // a.x >= b
  std::vector<Half> halves;
  for (const auto& row : model.constraints()) {
    std::vector<double> a(n, 0.0);
    for (const auto& t : row.terms) a[static_cast<std::size_t>(t.var)] = t.coef;
    if (row.sense != milp::Sense::LessEqual) halves.push_back({a, row.rhs});
    if (row.sense != milp::Sense::GreaterEqual) {
      for (auto& v : a) v = -v;
      halves.push_back({a, -row.rhs});
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> a(n, 0.0);
    const auto& v = model.variables()[j];
    if (std::isfinite(v.lower)) {
      a[j] = 1.0;
      halves.push_back({a, v.lower});
    }
    if (std::isfinite(v.upper)) {
      a[j] = -1.0;
      halves.push_back({a, -v.upper});
    }
  }
  std::optional<double> best;
  std::vector<int> pick(n);
  std::vector<bool> sel(halves.size(), false);
  std::fill(sel.begin(), sel.begin() + static_cast<long>(std::min(n, halves.size())), true);
  if (halves.size() < n) return std::nullopt;
  do {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (std::size_t h = 0; h < halves.size(); ++h) {
      if (!sel[h]) continue;
      a.push_back(halves[h].a);
      b.push_back(halves[h].b);
    }
    const auto x = gauss(a, b);
    if (!x) continue;
    bool ok = true;
    for (const auto& h : halves) {
      double act = 0.0;
      for (std::size_t j = 0; j < n; ++j) act += h.a[j] * (*x)[j];
      if (act < h.b - tol) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    const double obj = model.objective_value(*x);
    if (!best || obj < *best) best = obj;
  } while (std::prev_permutation(sel.begin(), sel.end()));
  return best;
}

/// Optimum of a pure binary model by trying every 0/1 vector.
inline std::optional<double> binary_enumeration_optimum(const milp::Model& model, double tol = 1e-9) {
  const std::size_t n = model.variable_count();
  std::optional<double> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = static_cast<double>(mask >> j & 1);
    if (model.max_violation(x) > tol) continue;
    const double obj = model.objective_value(x);
    if (!best || obj < *best) best = obj;
  }
  return best;
}

// ---------------------------------------------------------------- LP files

/// Minimal reader for the LP files the library writes: one objective, rows
/// possibly wrapped onto continuation lines, Bounds, Generals, Binaries.
inline milp::Model read_lp(const std::string& text) {
  std::istringstream in(text);
  std::string line, section;
  std::vector<std::string> statements;  // complete "name: expr op rhs" rows
  std::string objective_text;
  std::vector<std::string> bounds, generals, binaries;
  std::string pending;
  auto flush = [&] {
    if (pending.empty()) return;
    if (section == "obj") objective_text = pending;
    if (section == "rows") statements.push_back(pending);
    pending.clear();
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '\\') continue;
    if (line == "Minimize" || line == "Subject To" || line == "Bounds" || line == "Generals" ||
        line == "Binaries" || line == "End") {
      flush();
      section = line == "Minimize" ? "obj" : line == "Subject To" ? "rows" : line;
      continue;
    }
    const bool continuation = line.size() > 1 && line[0] == ' ' && line.find(':') == std::string::npos;
    if (section == "obj" || section == "rows") {
      if (!continuation) flush();
      pending += (pending.empty() ? "" : " ") + line;
    } else {
      std::istringstream words(line);
      std::string w;
      if (section == "Bounds") {
        bounds.push_back(line);
      } else {
        while (words >> w) (section == "Generals" ? generals : binaries).push_back(w);
      }
    }
  }
  flush();

  // Terms "c name" or "name" separated by +/- signs.
  auto parse_terms = [](const std::string& expr) {
    std::vector<std::pair<std::string, double>> terms;
    std::istringstream s(expr);
    std::string tok;
    double sign = 1.0;
    double coef = 1.0;
    bool have_coef = false;
    while (s >> tok) {
      if (tok == "+") {
        sign = 1.0;
      } else if (tok == "-") {
        sign = -1.0;
      } else {
        if (tok[0] == '-' && tok.size() > 1) {
          sign = -sign;
          tok.erase(0, 1);
        }
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end && *end == '\0' && !tok.empty() && (std::isdigit(static_cast<unsigned char>(tok[0])) || tok[0] == '.')) {
          coef = v;
          have_coef = true;
        } else {
          terms.push_back({tok, sign * (have_coef ? coef : 1.0)});
          sign = 1.0;
          coef = 1.0;
          have_coef = false;
        }
      }
    }
    return terms;
  };

  // Collect variable names in order of first appearance.
  std::vector<std::string> names;
  std::map<std::string, int> index;
  auto touch = [&](const std::string& name) {
    if (!index.count(name)) {
      index[name] = static_cast<int>(names.size());
      names.push_back(name);
    }
  };
  const auto obj_expr = objective_text.substr(objective_text.find(':') + 1);
  const auto obj_terms = parse_terms(obj_expr);
  for (const auto& [n, c] : obj_terms) touch(n);
  struct Row {
    std::string name;
    std::vector<std::pair<std::string, double>> terms;
    milp::Sense sense;
    double rhs;
  };
  std::vector<Row> rows;
  for (const auto& st : statements) {
    const auto colon = st.find(':');
    Row r;
    r.name = st.substr(0, colon);
    r.name.erase(0, r.name.find_first_not_of(' '));
    auto rest = st.substr(colon + 1);
    std::size_t op = rest.find("<=");
    r.sense = milp::Sense::LessEqual;
    std::size_t oplen = 2;
    if (op == std::string::npos) {
      op = rest.find(">=");
      r.sense = milp::Sense::GreaterEqual;
    }
    if (op == std::string::npos) {
      op = rest.find('=');
      r.sense = milp::Sense::Equal;
      oplen = 1;
    }
    r.terms = parse_terms(rest.substr(0, op));
    r.rhs = std::stod(rest.substr(op + oplen));
    for (const auto& [n, c] : r.terms) touch(n);
    rows.push_back(std::move(r));
  }
  for (const auto& b : binaries) touch(b);
  for (const auto& g : generals) touch(g);

  std::vector<double> lo(names.size(), 0.0), hi(names.size(), milp::kInf);
  std::vector<bool> integer(names.size(), false);
  for (const auto& b : binaries) {
    hi[static_cast<std::size_t>(index[b])] = 1.0;
    integer[static_cast<std::size_t>(index[b])] = true;
  }
  for (const auto& g : generals) integer[static_cast<std::size_t>(index[g])] = true;
  auto value = [](const std::string& s) {
    if (s == "+inf" || s == "inf") return milp::kInf;
    if (s == "-inf") return -milp::kInf;
    return std::stod(s);
  };
  for (const auto& b : bounds) {
    std::istringstream w(b);
    std::vector<std::string> t;
    std::string tok;
    while (w >> tok) t.push_back(tok);
    if (t.size() == 2 && t[1] == "free") {
      touch(t[0]);
      lo.resize(names.size(), 0.0);
      hi.resize(names.size(), milp::kInf);
      integer.resize(names.size(), false);
      lo[static_cast<std::size_t>(index[t[0]])] = -milp::kInf;
    } else if (t.size() == 3 && t[1] == "=") {
      lo[static_cast<std::size_t>(index[t[0]])] = hi[static_cast<std::size_t>(index[t[0]])] = value(t[2]);
    } else if (t.size() == 5) {
      lo[static_cast<std::size_t>(index[t[2]])] = value(t[0]);
      hi[static_cast<std::size_t>(index[t[2]])] = value(t[4]);
    }
  }
  std::map<std::string, double> obj;
  for (const auto& [n, c] : obj_terms) obj[n] += c;
  milp::Model model;
  for (std::size_t j = 0; j < names.size(); ++j) {
    model.add_variable(names[j], lo[j], hi[j], integer[j], obj.count(names[j]) ? obj[names[j]] : 0.0);
  }
  for (const auto& r : rows) {
    std::vector<milp::Term> terms;
    for (const auto& [n, c] : r.terms) terms.push_back({index[n], c});
    model.add_constraint(r.name, terms, r.sense, r.rhs);
  }
  return model;
}

}  // namespace support
