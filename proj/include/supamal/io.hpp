#pragma once

#include <string>

#include "json.hpp"
#include "supamal/structure.hpp"

namespace supamal {

/// Structure files:
///   {"kind": "lattice", "elements": ["0", "a", ...], "order": [["0", "a"], ...],
///    "ops": [{"name": "K", "property": "B3", "table": {"0": "a", ...}}],
///    "partial_ops": [{"name": "G", "property": "B3", "arity": 1, "values": {"d": "d"}}],
///    "comparabilities": [["G", "H"]]}
/// Order pairs are (lower, upper) and are closed reflexively and transitively.
/// Tables of arity n > 1 are keyed by comma-joined tuples.
nlohmann::ordered_json to_json(const OrderedStructure& s);

/// Throws InputError naming the offending entry; validates unless told not to.
OrderedStructure structure_from_json(const nlohmann::ordered_json& j, bool check = true);

/// Parse errors report line and column.
nlohmann::ordered_json read_json_file(const std::string& path);
OrderedStructure load_structure(const std::string& path, bool check = true);

/// Two-space indented, newline-terminated.
std::string dump(const nlohmann::ordered_json& j);
void write_text(const std::string& path, const std::string& text);

}  // namespace supamal
