#include "supamal/io.hpp"

#include <fstream>
#include <sstream>

namespace supamal {

using json = nlohmann::ordered_json;

namespace {

std::string tuple_key(const OrderedStructure& s, const Tuple& t) {
  std::string key;
  for (std::size_t i = 0; i < t.size(); ++i) key += (i ? "," : "") + s.names[static_cast<std::size_t>(t[i])];
  return key;
}

Tuple parse_key(const OrderedStructure& s, const std::string& key, int arity, const std::string& where) {
  Tuple t;
  std::size_t start = 0;
  while (true) {
    const auto comma = key.find(',', start);
    const std::string part = key.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    auto e = s.index_of(part);
    if (!e) throw InputError(where + ": unknown element '" + part + "'");
    t.push_back(*e);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (static_cast<int>(t.size()) != arity)
    throw InputError(where + ": key '" + key + "' does not have " + std::to_string(arity) + " component(s)");
  return t;
}

Elem element_of(const OrderedStructure& s, const json& v, const std::string& where) {
  if (!v.is_string()) throw InputError(where + ": element names must be strings");
  auto e = s.index_of(v.get<std::string>());
  if (!e) throw InputError(where + ": value '" + v.get<std::string>() + "' is not an element");
  return *e;
}

template <class T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(where + ": \"" + key + "\" has the wrong type");
  }
}

}  // namespace

json to_json(const OrderedStructure& s) {
  json j;
  j["kind"] = std::string(to_string(s.kind));
  j["elements"] = s.names;
  json order = json::array();
  for (int x = 0; x < s.size(); ++x)
    for (Elem y : s.poset.upper_covers(x)) order.push_back({s.names[static_cast<std::size_t>(x)], s.names[static_cast<std::size_t>(y)]});
  j["order"] = order;
  if (!s.ops.empty()) {
    json ops = json::array();
    for (const auto& o : s.ops) {
      json table = json::object();
      for (std::size_t i = 0; i < o.table.size(); ++i)
        table[tuple_key(s, tuple_at(i, s.size(), o.arity()))] = s.names[static_cast<std::size_t>(o.table[i])];
      ops.push_back({{"name", o.name}, {"property", o.property.to_string()}, {"table", table}});
    }
    j["ops"] = ops;
  }
  if (!s.partial_ops.empty()) {
    json ops = json::array();
    for (const auto& p : s.partial_ops) {
      json values = json::object();
      for (const auto& [t, v] : p.op.values) values[tuple_key(s, t)] = s.names[static_cast<std::size_t>(v)];
      ops.push_back({{"name", p.name}, {"property", p.property.to_string()}, {"arity", p.op.arity}, {"values", values}});
    }
    j["partial_ops"] = ops;
  }
  if (!s.comparabilities.empty()) {
    json c = json::array();
    for (const auto& x : s.comparabilities) c.push_back({x.lower, x.upper});
    j["comparabilities"] = c;
  }
  return j;
}

OrderedStructure structure_from_json(const json& j, bool check) {
  if (!j.is_object()) throw InputError("structure: expected a JSON object");
  const auto kind_name = field<std::string>(j, "kind", "structure");
  auto kind = kind_from_string(kind_name);
  if (!kind) throw InputError("structure: unknown kind '" + kind_name + "'");
  const auto names = field<std::vector<std::string>>(j, "elements", "structure");
  for (const auto& n : names)
    if (n.empty() || n.find(',') != std::string::npos)
      throw InputError("structure: element names must be nonempty and free of commas, got '" + n + "'");
  const int n = static_cast<int>(names.size());
  auto index = [&](const json& v, const std::string& where) {
    if (!v.is_string()) throw InputError(where + ": element names must be strings");
    for (int i = 0; i < n; ++i)
      if (names[static_cast<std::size_t>(i)] == v.get<std::string>()) return static_cast<Elem>(i);
    throw InputError(where + ": unknown element '" + v.get<std::string>() + "'");
  };
  std::vector<std::pair<Elem, Elem>> pairs;
  if (j.contains("order")) {
    if (!j["order"].is_array()) throw InputError("order: expected an array of pairs");
    for (const auto& p : j["order"]) {
      if (!p.is_array() || p.size() != 2) throw InputError("order: every entry must be a [lower, upper] pair");
      pairs.emplace_back(index(p[0], "order"), index(p[1], "order"));
    }
  }
  FinitePoset poset;
  try {
    poset = FinitePoset::from_pairs(n, pairs);
  } catch (const InputError& e) {
    const auto& w = e.witnesses();
    if (w.size() == 2)
      throw InputError("order: antisymmetry violated by " + names[static_cast<std::size_t>(w[0])] + " and " +
                           names[static_cast<std::size_t>(w[1])],
                       w);
    throw;
  }
  OrderedStructure s = build_structure(std::move(poset), *kind, names);
  if (j.contains("ops")) {
    for (const auto& o : j["ops"]) {
      const auto name = field<std::string>(o, "name", "ops");
      const std::string where = "operation " + name;
      const auto w = PropertySpec::parse(field<std::string>(o, "property", where));
      const auto table = field<std::map<std::string, json>>(o, "table", where);
      std::vector<Elem> t(ipow(static_cast<std::size_t>(n), w.arity), -1);
      for (const auto& [key, v] : table) t[tuple_index(parse_key(s, key, w.arity, where), n)] = element_of(s, v, where);
      for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] < 0) throw InputError(where + ": no value for " + tuple_key(s, tuple_at(i, n, w.arity)));
      if (s.op(name)) throw InputError(where + " defined twice");
      s.set_op({name, w, std::move(t)});
    }
  }
  if (j.contains("partial_ops")) {
    for (const auto& o : j["partial_ops"]) {
      const auto name = field<std::string>(o, "name", "partial_ops");
      const std::string where = "partial operation " + name;
      const auto w = PropertySpec::parse(o.contains("property") ? o["property"].get<std::string>() : std::string("B1"));
      const int arity = o.contains("arity") ? o["arity"].get<int>() : w.arity;
      if (arity != w.arity) throw InputError(where + ": arity disagrees with its property");
      NamedPartialOp p{name, w, PartialOp{arity, {}}};
      for (const auto& [key, v] : field<std::map<std::string, json>>(o, "values", where))
        p.op.values[parse_key(s, key, arity, where)] = element_of(s, v, where);
      for (const auto& q : s.partial_ops)
        if (q.name == name) throw InputError(where + " defined twice");
      s.partial_ops.push_back(std::move(p));
    }
  }
  if (j.contains("comparabilities")) {
    for (const auto& c : j["comparabilities"]) {
      if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_string())
        throw InputError("comparabilities: every entry must be a [lower, upper] pair of operation names");
      s.comparabilities.push_back({c[0].get<std::string>(), c[1].get<std::string>()});
    }
    std::sort(s.comparabilities.begin(), s.comparabilities.end());
  }
  if (check) {
    auto report = validate(s);
    if (!report.ok()) {
      std::string w;
      for (Elem e : report.violations.front().witnesses)
        if (e >= 0 && e < n) w += (w.empty() ? " (" : ", ") + names[static_cast<std::size_t>(e)];
      throw InputError(report.violations.front().what + (w.empty() ? "" : w + ")"), report.violations.front().witnesses);
    }
  }
  return s;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

OrderedStructure load_structure(const std::string& path, bool check) {
  try {
    return structure_from_json(read_json_file(path), check);
  } catch (const InputError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw InputError(path + ": " + what, e.witnesses());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

}  // namespace supamal
