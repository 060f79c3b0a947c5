#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "rftrlp/milp/model.hpp"

namespace rftrlp::milp {

/// CPLEX LP text:
///
///   \ <comment>
///   Minimize
///    obj: <c1> <name1> + ...          (" obj: 0" when empty)
///   Subject To
///    <row>: <terms> <= | >= | = <rhs>
///   Bounds
///    <lo> <= <name> <= <hi>           ("-inf"/"+inf" for infinite sides,
///                                       "<name> free" when both are)
///   Generals / Binaries
///    <names>
///   End
///
/// Variables with the default bounds [0, +inf) and binaries with [0, 1] are
/// not repeated under Bounds. Long expressions wrap onto continuation lines
/// that start with a space. Numbers print with up to 17 significant digits.
/// Names must be 1..255 characters from [A-Za-z0-9] and !"#$%&()/,.;?@_`'{}|~,
/// must not start with a digit, '.', or 'e'/'E' followed by a digit or nothing
/// else; violations raise AdapterError carrying a suggested replacement.
std::string to_lp_string(const Model& model);
void export_lp_file(const Model& model, const std::filesystem::path& path);

/// Suggested replacement for a name rejected by the LP writer.
std::string suggest_lp_name(const std::string& name);

/// Solution files: one `name value` pair per line, separated by whitespace.
/// Blank lines and lines starting with '#' are ignored. Any other line that is
/// not exactly a name followed by a finite number raises AdapterError quoting
/// the line number and content.
std::map<std::string, double> parse_solution(const std::string& text);
std::map<std::string, double> import_solution_file(const std::filesystem::path& path);
void write_solution_file(const Model& model, const std::vector<double>& values, const std::filesystem::path& path);

/// Dense assignment in model order. Unknown names raise AdapterError; names
/// missing from the file take the value 0.
std::vector<double> to_assignment(const Model& model, const std::map<std::string, double>& solution);

}  // namespace rftrlp::milp
