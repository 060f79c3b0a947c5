#include "rftrlp/milp/lp_format.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rftrlp/error.hpp"

namespace rftrlp::milp {

namespace {

constexpr std::string_view kSymbols = "!\"#$%&()/,.;?@_`'{}|~";
constexpr std::size_t kMaxLine = 240;

bool allowed_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || kSymbols.find(c) != std::string_view::npos;
}

std::string name_problem(const std::string& name) {
  if (name.empty()) return "is empty";
  if (name.size() > 255) return "is longer than 255 characters";
  for (char c : name) {
    if (!allowed_char(c)) return std::string("contains the character '") + c + "'";
  }
  const char first = name.front();
  if (std::isdigit(static_cast<unsigned char>(first)) || first == '.') return "starts with a digit or '.'";
  if ((first == 'e' || first == 'E') &&
      (name.size() == 1 || std::isdigit(static_cast<unsigned char>(name[1])))) {
    return "reads as an exponent";
  }
  return {};
}

void check_name(const std::string& kind, const std::string& name) {
  const auto problem = name_problem(name);
  if (!problem.empty()) {
    throw AdapterError(kind + " name '" + name + "' " + problem + " and cannot be written in LP format; rename it to '" +
                       suggest_lp_name(name) + "'");
  }
}

std::string number(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string bound(double v) {
  if (v == kInf) return "+inf";
  if (v == -kInf) return "-inf";
  return number(v);
}

/// Writes " t1 + t2 - t3 ..." wrapping long lines.
void write_terms(std::ostringstream& out, std::size_t& line, const std::vector<Term>& terms, const Model& model) {
  bool first = true;
  for (const auto& t : terms) {
    std::string piece;
    const double c = t.coef;
    if (first) {
      piece = c < 0 ? "-" : "";
    } else {
      piece = c < 0 ? " - " : " + ";
    }
    const double a = std::abs(c);
    if (a != 1.0) piece += number(a) + " ";
    piece += model.variable(t.var).name;
    if (line + piece.size() > kMaxLine) {
      out << "\n ";
      line = 1;
      if (piece.front() == ' ') piece.erase(0, 1);
    }
    out << piece;
    line += piece.size();
    first = false;
  }
}

}  // namespace

std::string suggest_lp_name(const std::string& name) {
  std::string out;
  for (char c : name) out += allowed_char(c) ? c : '_';
  if (out.empty() || !name_problem(out).empty()) out = "v_" + out;
  if (out.size() > 255) out.resize(255);
  return out;
}

std::string to_lp_string(const Model& model) {
  model.validate();
  for (const auto& v : model.variables()) check_name("variable", v.name);
  for (const auto& r : model.constraints()) check_name("constraint", r.name);

  std::ostringstream out;
  out << "\\ rftrlp model: " << model.variable_count() << " variables, " << model.constraint_count() << " constraints\n";
  out << "Minimize\n obj: ";
  std::vector<Term> objective;
  for (std::size_t j = 0; j < model.variable_count(); ++j) {
    if (model.variables()[j].objective != 0.0) objective.push_back({static_cast<int>(j), model.variables()[j].objective});
  }
  std::size_t line = 6;
  if (objective.empty()) {
    out << "0";
  } else {
    write_terms(out, line, objective, model);
  }
  out << "\nSubject To\n";
  for (const auto& row : model.constraints()) {
    out << ' ' << row.name << ": ";
    line = row.name.size() + 3;
    if (row.terms.empty()) {
      // LP format needs a variable on the left; 0 times the first one keeps the row.
      if (model.variable_count() == 0) throw AdapterError("constraint '" + row.name + "' has no terms and the model no variables");
      out << "0 " << model.variables().front().name;
    } else {
      write_terms(out, line, row.terms, model);
    }
    switch (row.sense) {
      case Sense::LessEqual: out << " <= "; break;
      case Sense::GreaterEqual: out << " >= "; break;
      case Sense::Equal: out << " = "; break;
    }
    out << number(row.rhs) << '\n';
  }
  std::vector<std::string> binaries, generals, bounds;
  for (const auto& v : model.variables()) {
    const bool binary = v.integer && v.lower == 0.0 && v.upper == 1.0;
    if (binary) {
      binaries.push_back(v.name);
      continue;
    }
    if (v.integer) generals.push_back(v.name);
    if (v.lower == 0.0 && v.upper == kInf) continue;
    if (v.lower == -kInf && v.upper == kInf) {
      bounds.push_back(v.name + " free");
    } else if (v.lower == v.upper) {
      bounds.push_back(v.name + " = " + number(v.lower));
    } else {
      bounds.push_back(bound(v.lower) + " <= " + v.name + " <= " + bound(v.upper));
    }
  }
  if (!bounds.empty()) {
    out << "Bounds\n";
    for (const auto& b : bounds) out << ' ' << b << '\n';
  }
  auto section = [&](const char* title, const std::vector<std::string>& names) {
    if (names.empty()) return;
    out << title << '\n';
    std::size_t width = 0;
    for (const auto& name : names) {
      if (width > 0 && width + name.size() + 1 > kMaxLine) {
        out << '\n';
        width = 0;
      }
      out << ' ' << name;
      width += name.size() + 1;
    }
    out << '\n';
  };
  section("Generals", generals);
  section("Binaries", binaries);
  out << "End\n";
  return out.str();
}

void export_lp_file(const Model& model, const std::filesystem::path& path) {
  const auto text = to_lp_string(model);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw AdapterError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw AdapterError("failed writing " + path.string());
}

std::map<std::string, double> parse_solution(const std::string& text) {
  std::map<std::string, double> out;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::istringstream fields(raw);
    std::string name, value, extra;
    if (!(fields >> name) || name.front() == '#') continue;
    const auto fail = [&](const std::string& why) {
      return AdapterError("solution line " + std::to_string(line_no) + ": " + why + ": '" + raw + "'");
    };
    if (!(fields >> value)) throw fail("missing value");
    if (fields >> extra) throw fail("expected exactly 'name value'");
    double parsed = 0.0;
    try {
      std::size_t used = 0;
      parsed = std::stod(value, &used);
      if (used != value.size()) throw fail("value is not a number");
    } catch (const std::logic_error&) {
      throw fail("value is not a number");
    }
    if (!std::isfinite(parsed)) throw fail("value is not finite");
    if (!out.emplace(name, parsed).second) throw fail("duplicate variable");
  }
  return out;
}

std::map<std::string, double> import_solution_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AdapterError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_solution(buffer.str());
  } catch (const AdapterError& e) {
    throw AdapterError(path.string() + ": " + e.what());
  }
}

void write_solution_file(const Model& model, const std::vector<double>& values, const std::filesystem::path& path) {
  if (values.size() != model.variable_count()) throw AdapterError("assignment size does not match the model");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw AdapterError("cannot open " + path.string() + " for writing");
  for (std::size_t j = 0; j < values.size(); ++j) out << model.variables()[j].name << ' ' << number(values[j]) << '\n';
}

std::vector<double> to_assignment(const Model& model, const std::map<std::string, double>& solution) {
  std::vector<double> values(model.variable_count(), 0.0);
  for (const auto& [name, value] : solution) {
    const auto index = model.find_variable(name);
    if (!index) throw AdapterError("solution names unknown variable '" + name + "'");
    values[static_cast<std::size_t>(*index)] = value;
  }
  return values;
}

}  // namespace rftrlp::milp
