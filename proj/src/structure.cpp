#include "supamal/structure.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <set>

#include "supamal/extension.hpp"

namespace supamal {

namespace {

constexpr std::array<std::string_view, 7> kKindNames = {
    "poset", "meet-semilattice", "join-semilattice", "lattice", "bounded-lattice", "distributive-lattice",
    "boolean-algebra"};

using Words = std::vector<std::uint64_t>;

// Up-sets (or down-sets) as bit rows.
std::vector<Words> cone_rows(const FinitePoset& p, bool up) {
  const int n = p.size();
  const std::size_t w = static_cast<std::size_t>((n + 63) / 64);
  std::vector<Words> rows(static_cast<std::size_t>(n), Words(w, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (up ? p.leq(a, b) : p.leq(b, a))
        rows[static_cast<std::size_t>(a)][static_cast<std::size_t>(b / 64)] |= std::uint64_t{1} << (b % 64);
  return rows;
}

int popcount(const Words& w) {
  int c = 0;
  for (auto x : w) c += std::popcount(x);
  return c;
}

// Least element of the cone intersection `acc`; -1 if none. An element of
// the intersection is least iff its own cone has the same size.
Elem least_in(const Words& acc, const std::vector<int>& cone_size) {
  const int target = popcount(acc);
  for (std::size_t wi = 0; wi < acc.size(); ++wi) {
    std::uint64_t bits = acc[wi];
    while (bits) {
      int b = std::countr_zero(bits);
      bits &= bits - 1;
      Elem u = static_cast<Elem>(wi * 64 + static_cast<std::size_t>(b));
      if (cone_size[static_cast<std::size_t>(u)] == target) return u;
    }
  }
  return -1;
}

std::vector<Elem> bound_table(const FinitePoset& p, bool join) {
  const int n = p.size();
  auto cones = cone_rows(p, join);
  std::vector<int> sizes;
  for (const auto& c : cones) sizes.push_back(popcount(c));
  std::vector<Elem> t(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
  Words acc;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      acc = cones[static_cast<std::size_t>(a)];
      const Words& other = cones[static_cast<std::size_t>(b)];
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] &= other[i];
      Elem r = least_in(acc, sizes);
      t[static_cast<std::size_t>(a * n + b)] = r;
      t[static_cast<std::size_t>(b * n + a)] = r;
    }
  return t;
}

std::optional<Elem> extreme(const FinitePoset& p, bool greatest) {
  for (int a = 0; a < p.size(); ++a) {
    bool all = true;
    for (int b = 0; b < p.size() && all; ++b) all = greatest ? p.leq(b, a) : p.leq(a, b);
    if (all) return a;
  }
  return std::nullopt;
}

bool all_defined(const std::vector<Elem>& t) {
  return std::none_of(t.begin(), t.end(), [](Elem e) { return e < 0; });
}

std::optional<std::array<Elem, 3>> distributivity_failure(const OrderedStructure& s) {
  const int n = s.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = y + 1; z < n; ++z)
        if (s.meet(x, s.join(y, z)) != s.join(s.meet(x, y), s.meet(x, z))) return std::array<Elem, 3>{x, y, z};
  return std::nullopt;
}

std::vector<Elem> complement_table(const OrderedStructure& s) {
  std::vector<Elem> c(static_cast<std::size_t>(s.size()), -1);
  if (!s.bottom || !s.top || s.join_table.empty() || s.meet_table.empty()) return c;
  for (int x = 0; x < s.size(); ++x)
    for (int y = 0; y < s.size(); ++y)
      if (s.join(x, y) == *s.top && s.meet(x, y) == *s.bottom) {
        c[static_cast<std::size_t>(x)] = y;
        break;
      }
  return c;
}

std::string name_of(const OrderedStructure& s, Elem e) {
  if (e >= 0 && static_cast<std::size_t>(e) < s.names.size()) return s.names[static_cast<std::size_t>(e)];
  return std::to_string(e);
}

std::string names_of(const OrderedStructure& s, std::initializer_list<Elem> es) {
  std::string out;
  for (Elem e : es) {
    if (!out.empty()) out += ", ";
    out += name_of(s, e);
  }
  return out;
}

}  // namespace

std::string_view to_string(StructureKind k) { return kKindNames[static_cast<std::size_t>(k)]; }

std::optional<StructureKind> kind_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i)
    if (kKindNames[i] == s) return static_cast<StructureKind>(i);
  if (s == "jsl") return StructureKind::join_semilattice;
  if (s == "msl") return StructureKind::meet_semilattice;
  if (s == "dl" || s == "distributive") return StructureKind::distributive_lattice;
  if (s == "ba" || s == "boolean") return StructureKind::boolean_algebra;
  if (s == "bounded") return StructureKind::bounded_lattice;
  return std::nullopt;
}

bool implies(StructureKind strong, StructureKind weak) {
  if (strong == weak || weak == StructureKind::poset) return true;
  const auto rank = [](StructureKind k) { return static_cast<int>(k); };
  if (rank(strong) < rank(StructureKind::lattice)) return false;
  return rank(strong) >= rank(weak);
}

std::optional<Elem> OrderedStructure::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<Elem>(i);
  return std::nullopt;
}

Elem OrderedStructure::element(std::string_view name) const {
  auto i = index_of(name);
  if (!i) throw InputError("unknown element '" + std::string(name) + "'");
  return *i;
}

const Operation* OrderedStructure::op(std::string_view name) const {
  for (const auto& o : ops)
    if (o.name == name) return &o;
  return nullptr;
}

const NamedPartialOp* OrderedStructure::partial_op(std::string_view name) const {
  for (const auto& o : partial_ops)
    if (o.name == name) return &o;
  return nullptr;
}

void OrderedStructure::set_op(Operation o) {
  auto it = std::lower_bound(ops.begin(), ops.end(), o.name,
                             [](const Operation& a, const std::string& n) { return a.name < n; });
  if (it != ops.end() && it->name == o.name) {
    *it = std::move(o);
  } else {
    ops.insert(it, std::move(o));
  }
}

OrderedStructure build_structure(FinitePoset p, StructureKind kind, std::vector<std::string> names) {
  OrderedStructure s;
  const int n = p.size();
  if (names.empty())
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  s.names = std::move(names);
  s.kind = kind;
  s.bottom = extreme(p, false);
  s.top = extreme(p, true);
  s.poset = std::move(p);
  if (has_join(kind)) s.join_table = bound_table(s.poset, true);
  if (has_meet(kind)) s.meet_table = bound_table(s.poset, false);
  if (has_complement(kind)) s.complement = complement_table(s);
  return s;
}

OrderedStructure make_structure(FinitePoset p, StructureKind kind, std::vector<std::string> names) {
  OrderedStructure s = build_structure(std::move(p), kind, std::move(names));
  auto report = validate(s);
  if (!report.ok())
    throw InputError("not a valid " + std::string(to_string(kind)) + ": " + report.violations.front().what,
                     report.violations.front().witnesses);
  return s;
}

StructureKind strongest_kind(const FinitePoset& p, StructureKind ceiling) {
  const auto joins = bound_table(p, true);
  const auto meets = bound_table(p, false);
  const bool j = all_defined(joins), m = all_defined(meets);
  StructureKind k = StructureKind::poset;
  if (j && m) {
    k = StructureKind::lattice;
  } else if (j) {
    k = StructureKind::join_semilattice;
  } else if (m) {
    k = StructureKind::meet_semilattice;
  }
  if (k == StructureKind::lattice && p.size() > 0) {
    k = StructureKind::bounded_lattice;
    auto s = build_structure(p, StructureKind::boolean_algebra);
    if (!distributivity_failure(s)) {
      k = StructureKind::distributive_lattice;
      if (all_defined(s.complement)) k = StructureKind::boolean_algebra;
    }
  }
  while (!implies(ceiling, k)) {
    // Step down along the chain of kinds until one `ceiling` implies.
    if (k == StructureKind::lattice) {
      k = implies(ceiling, StructureKind::join_semilattice) ? StructureKind::join_semilattice
          : implies(ceiling, StructureKind::meet_semilattice) ? StructureKind::meet_semilattice
                                                               : StructureKind::poset;
    } else if (k == StructureKind::join_semilattice || k == StructureKind::meet_semilattice) {
      k = StructureKind::poset;
    } else {
      k = static_cast<StructureKind>(static_cast<int>(k) - 1);
    }
  }
  return k;
}

ValidationReport validate(const OrderedStructure& s) {
  ValidationReport r;
  auto add = [&](std::string what, std::vector<Elem> w) { r.violations.push_back({std::move(what), std::move(w)}); };
  const int n = s.size();

  for (const auto& d : s.poset.defects()) {
    switch (d.kind) {
      case FinitePoset::Defect::Kind::reflexivity:
        add("reflexivity fails at " + name_of(s, d.witnesses[0]), d.witnesses);
        break;
      case FinitePoset::Defect::Kind::antisymmetry:
        add("antisymmetry fails for (" + names_of(s, {d.witnesses[0], d.witnesses[1]}) + ")", d.witnesses);
        break;
      case FinitePoset::Defect::Kind::transitivity:
        add("transitivity fails for (" + names_of(s, {d.witnesses[0], d.witnesses[1], d.witnesses[2]}) + ")",
            d.witnesses);
        break;
    }
  }
  if (!r.ok()) return r;

  if (s.names.size() != static_cast<std::size_t>(n)) add("element name list has the wrong length", {});
  {
    std::set<std::string> seen;
    for (int i = 0; i < static_cast<int>(s.names.size()); ++i)
      if (!seen.insert(s.names[static_cast<std::size_t>(i)]).second)
        add("duplicate element name '" + s.names[static_cast<std::size_t>(i)] + "'", {i});
  }

  auto check_table = [&](const std::vector<Elem>& t, bool join) {
    const auto expected = bound_table(s.poset, join);
    const char* label = join ? "join" : "meet";
    if (t.size() != expected.size()) {
      add(std::string(label) + " table has the wrong size", {});
      return false;
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Elem e = expected[static_cast<std::size_t>(a * n + b)];
        if (e < 0) {
          add(std::string(label) + " of " + names_of(s, {a, b}) + " does not exist", {a, b});
          return false;
        }
        if (t[static_cast<std::size_t>(a * n + b)] != e) {
          add(std::string(label) + " table wrong at (" + names_of(s, {a, b}) + ")", {a, b});
          return false;
        }
      }
    return true;
  };
  bool lattice_ok = true;
  if (has_join(s.kind)) lattice_ok = check_table(s.join_table, true) && lattice_ok;
  if (has_meet(s.kind)) lattice_ok = check_table(s.meet_table, false) && lattice_ok;
  if (has_constants(s.kind)) {
    if (n == 0) add("bounded kinds need a nonempty carrier", {});
    if (n > 0 && (!s.bottom || !s.top)) add("missing bottom or top element", {});
  }
  if (lattice_ok && implies(s.kind, StructureKind::distributive_lattice) && n > 0) {
    if (auto t = distributivity_failure(s))
      add("distributivity fails for (" + names_of(s, {(*t)[0], (*t)[1], (*t)[2]}) + ")",
          {(*t)[0], (*t)[1], (*t)[2]});
  }
  if (lattice_ok && has_complement(s.kind) && n > 0) {
    if (s.complement.size() != static_cast<std::size_t>(n)) {
      add("complement table has the wrong size", {});
    } else {
      for (int x = 0; x < n; ++x) {
        Elem c = s.complement[static_cast<std::size_t>(x)];
        if (c < 0 || c >= n || s.join(x, c) != *s.top || s.meet(x, c) != *s.bottom) {
          add("no complement for " + name_of(s, x), {x});
          break;
        }
      }
    }
  }

  for (const auto& o : s.ops) {
    try {
      o.property.check();
    } catch (const InputError& e) {
      add("operation " + o.name + ": " + e.what(), {});
      continue;
    }
    if (o.table.size() != ipow(static_cast<std::size_t>(n), o.arity())) {
      add("operation " + o.name + " table is not total", {});
      continue;
    }
    bool in_range = true;
    for (std::size_t i = 0; i < o.table.size() && in_range; ++i)
      if (o.table[i] < 0 || o.table[i] >= n) {
        add("operation " + o.name + " has a value off the carrier", tuple_at(i, n, o.arity()));
        in_range = false;
      }
    if (!in_range) continue;
    if (o.property.kind == PropertyCase::C3 && !(has_join(s.kind) && has_meet(s.kind) && lattice_ok)) {
      add("operation " + o.name + ": C3 needs a lattice host", {});
      continue;
    }
    auto v = verify_property(s, o.property, o.table);
    if (!v) add("operation " + o.name + " is not " + o.property.to_string() + ": " + v.reason, v.witnesses);
  }

  for (const auto& po : s.partial_ops) {
    if (po.op.arity != po.property.arity) add("partial operation " + po.name + " arity mismatch", {});
    for (const auto& [t, v] : po.op.values) {
      bool ok = static_cast<int>(t.size()) == po.op.arity && v >= 0 && v < n;
      for (Elem e : t) ok = ok && e >= 0 && e < n;
      if (!ok) {
        add("partial operation " + po.name + " has an entry off the carrier", t);
        break;
      }
    }
  }

  for (const auto& c : s.comparabilities) {
    const Operation* lo = s.op(c.lower);
    const Operation* hi = s.op(c.upper);
    const NamedPartialOp* plo = s.partial_op(c.lower);
    const NamedPartialOp* phi = s.partial_op(c.upper);
    if ((!lo && !plo) || (!hi && !phi)) {
      add("comparability names an unknown operation: " + c.lower + " <= " + c.upper, {});
      continue;
    }
    if (lo && hi) {
      if (lo->arity() != hi->arity()) {
        add("comparability between operations of different arity", {});
        continue;
      }
      for (std::size_t i = 0; i < lo->table.size(); ++i)
        if (!s.leq(lo->table[i], hi->table[i])) {
          add(c.lower + " <= " + c.upper + " fails", tuple_at(i, n, lo->arity()));
          break;
        }
    } else if (plo && phi) {
      for (const auto& [t, v] : plo->op.values) {
        auto it = phi->op.values.find(t);
        if (it != phi->op.values.end() && !s.leq(v, it->second)) {
          add(c.lower + " <= " + c.upper + " fails on the common domain", t);
          break;
        }
      }
    }
  }
  return r;
}

std::optional<Elem> bound(const FinitePoset& p, std::span<const Elem> subset, Direction d) {
  const int n = p.size();
  std::optional<Elem> best;
  std::vector<Elem> candidates;
  for (int x = 0; x < n; ++x) {
    bool ok = true;
    for (Elem s : subset) {
      ok = d == Direction::meet ? p.leq(x, s) : p.leq(s, x);
      if (!ok) break;
    }
    if (ok) candidates.push_back(x);
  }
  for (Elem c : candidates) {
    bool extreme_in = true;
    for (Elem o : candidates) {
      extreme_in = d == Direction::meet ? p.leq(o, c) : p.leq(c, o);
      if (!extreme_in) break;
    }
    if (extreme_in) return c;
  }
  return best;
}

Verdict check_embedding(const OrderedStructure& source, const OrderedStructure& target, const Embedding& e,
                        bool added_ops) {
  const int n = source.size();
  if (e.map.size() != static_cast<std::size_t>(n)) return Verdict::fail("map has the wrong length");
  for (int a = 0; a < n; ++a)
    if (e(a) < 0 || e(a) >= target.size()) return Verdict::fail("map leaves the target carrier", {a});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a != b && e(a) == e(b)) return Verdict::fail("map is not injective", {a, b});
      if (source.leq(a, b) != target.leq(e(a), e(b))) return Verdict::fail("order not preserved and reflected", {a, b});
    }
  if (has_join(source.kind) && !target.join_table.empty())
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (e(source.join(a, b)) != target.join(e(a), e(b))) return Verdict::fail("join not preserved", {a, b});
  if (has_meet(source.kind) && !target.meet_table.empty())
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (e(source.meet(a, b)) != target.meet(e(a), e(b))) return Verdict::fail("meet not preserved", {a, b});
  if (has_constants(source.kind) && n > 0) {
    if (!target.bottom || e(*source.bottom) != *target.bottom) return Verdict::fail("bottom not preserved");
    if (!target.top || e(*source.top) != *target.top) return Verdict::fail("top not preserved");
  }
  if (has_complement(source.kind) && !target.complement.empty())
    for (int a = 0; a < n; ++a)
      if (e(source.complement[static_cast<std::size_t>(a)]) != target.complement[static_cast<std::size_t>(e(a))])
        return Verdict::fail("complement not preserved", {a});
  if (added_ops)
    for (const auto& o : source.ops) {
      const Operation* t = target.op(o.name);
      if (!t) continue;
      if (t->arity() != o.arity()) return Verdict::fail("operation " + o.name + " arity differs");
      const std::size_t cells = o.table.size();
      for (std::size_t i = 0; i < cells; ++i) {
        Tuple tu = tuple_at(i, n, o.arity());
        Tuple img = tu;
        for (auto& x : img) x = e(x);
        if (e(o.table[i]) != t->at(img, target.size()))
          return Verdict::fail("operation " + o.name + " not preserved", tu);
      }
    }
  return Verdict::pass();
}

namespace {

bool closed_step(const OrderedStructure& s, std::vector<std::uint8_t>& in, bool added_ops) {
  const int n = s.size();
  std::vector<Elem> members;
  for (int x = 0; x < n; ++x)
    if (in[static_cast<std::size_t>(x)]) members.push_back(x);
  bool grew = false;
  auto take = [&](Elem x) {
    if (x >= 0 && !in[static_cast<std::size_t>(x)]) {
      in[static_cast<std::size_t>(x)] = 1;
      grew = true;
    }
  };
  for (Elem a : members)
    for (Elem b : members) {
      if (has_join(s.kind)) take(s.join(a, b));
      if (has_meet(s.kind)) take(s.meet(a, b));
    }
  if (has_complement(s.kind))
    for (Elem a : members) take(s.complement[static_cast<std::size_t>(a)]);
  if (added_ops)
    for (const auto& o : s.ops) {
      const std::size_t m = members.size();
      const std::size_t cells = ipow(m, o.arity());
      Tuple t(static_cast<std::size_t>(o.arity()));
      for (std::size_t i = 0; i < cells; ++i) {
        std::size_t k = i;
        for (int h = o.arity() - 1; h >= 0; --h) {
          t[static_cast<std::size_t>(h)] = members[k % m];
          k /= m;
        }
        take(o.at(t, n));
      }
    }
  return grew;
}

}  // namespace

Substructure restrict_to(const OrderedStructure& s, std::span<const Elem> elems) {
  std::vector<Elem> sorted(elems.begin(), elems.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const int n = s.size();
  std::vector<std::uint8_t> in(static_cast<std::size_t>(n), 0);
  for (Elem e : sorted) in[static_cast<std::size_t>(e)] = 1;
  if (has_constants(s.kind) && n > 0 && (!in[static_cast<std::size_t>(*s.bottom)] || !in[static_cast<std::size_t>(*s.top)]))
    throw PreconditionError("subset misses a constant of the structure");
  {
    auto probe = in;
    if (closed_step(s, probe, true)) throw PreconditionError("subset is not closed under the operations");
  }
  std::vector<Elem> index(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) index[static_cast<std::size_t>(sorted[i])] = static_cast<Elem>(i);
  std::vector<std::string> names;
  for (Elem e : sorted) names.push_back(s.names[static_cast<std::size_t>(e)]);
  OrderedStructure sub = build_structure(s.poset.induced(sorted), s.kind, std::move(names));
  const int m = sub.size();
  for (const auto& o : s.ops) {
    Operation r{o.name, o.property, std::vector<Elem>(ipow(static_cast<std::size_t>(m), o.arity()))};
    for (std::size_t i = 0; i < r.table.size(); ++i) {
      Tuple t = tuple_at(i, m, o.arity());
      for (auto& x : t) x = sorted[static_cast<std::size_t>(x)];
      r.table[i] = index[static_cast<std::size_t>(o.at(t, n))];
    }
    sub.ops.push_back(std::move(r));
  }
  for (const auto& po : s.partial_ops) {
    NamedPartialOp r{po.name, po.property, PartialOp{po.op.arity, {}}};
    for (const auto& [t, v] : po.op.values) {
      Tuple u = t;
      bool ok = index[static_cast<std::size_t>(v)] >= 0;
      for (auto& x : u) {
        ok = ok && index[static_cast<std::size_t>(x)] >= 0;
        if (ok) x = index[static_cast<std::size_t>(x)];
      }
      if (ok) r.op.values.emplace(u, index[static_cast<std::size_t>(v)]);
    }
    sub.partial_ops.push_back(std::move(r));
  }
  sub.comparabilities = s.comparabilities;
  return {std::move(sub), Embedding{std::move(sorted)}};
}

Substructure generated_substructure(const OrderedStructure& s, std::span<const Elem> gens, bool added_ops) {
  const int n = s.size();
  std::vector<std::uint8_t> in(static_cast<std::size_t>(n), 0);
  for (Elem g : gens) {
    if (g < 0 || g >= n) throw InputError("generator outside the carrier", {g});
    in[static_cast<std::size_t>(g)] = 1;
  }
  if (has_constants(s.kind) && n > 0) {
    in[static_cast<std::size_t>(*s.bottom)] = 1;
    in[static_cast<std::size_t>(*s.top)] = 1;
  }
  while (closed_step(s, in, added_ops)) {
  }
  std::vector<Elem> elems;
  for (int x = 0; x < n; ++x)
    if (in[static_cast<std::size_t>(x)]) elems.push_back(x);
  if (added_ops) return restrict_to(s, elems);
  OrderedStructure stripped = s;
  stripped.ops.clear();
  stripped.partial_ops.clear();
  stripped.comparabilities.clear();
  return restrict_to(stripped, elems);
}

OrderedStructure permute(const OrderedStructure& s, std::span<const Elem> perm) {
  const int n = s.size();
  std::vector<std::string> names(static_cast<std::size_t>(n));
  for (int e = 0; e < n; ++e) names[static_cast<std::size_t>(perm[static_cast<std::size_t>(e)])] = s.names[static_cast<std::size_t>(e)];
  OrderedStructure r = build_structure(s.poset.permuted(perm), s.kind, std::move(names));
  for (const auto& o : s.ops) {
    Operation q{o.name, o.property, std::vector<Elem>(o.table.size())};
    for (std::size_t i = 0; i < o.table.size(); ++i) {
      Tuple t = tuple_at(i, n, o.arity());
      for (auto& x : t) x = perm[static_cast<std::size_t>(x)];
      q.table[tuple_index(t, n)] = perm[static_cast<std::size_t>(o.table[i])];
    }
    r.ops.push_back(std::move(q));
  }
  for (const auto& po : s.partial_ops) {
    NamedPartialOp q{po.name, po.property, PartialOp{po.op.arity, {}}};
    for (const auto& [t, v] : po.op.values) {
      Tuple u = t;
      for (auto& x : u) x = perm[static_cast<std::size_t>(x)];
      q.op.values.emplace(u, perm[static_cast<std::size_t>(v)]);
    }
    r.partial_ops.push_back(std::move(q));
  }
  r.comparabilities = s.comparabilities;
  return r;
}

std::string subset_name(const std::vector<std::string>& atoms, unsigned mask) {
  const unsigned full = atoms.empty() ? 0u : (1u << atoms.size()) - 1u;
  if (mask == 0) return "0";
  if (mask == full) return "1";
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (mask & (1u << i)) {
      if (!out.empty()) out += '+';
      out += atoms[i];
    }
  return out;
}

OrderedStructure boolean_algebra(const std::vector<std::string>& atoms) {
  const int k = static_cast<int>(atoms.size());
  if (k > 12) throw BoundExceeded("Boolean algebra with more than 12 atoms");
  const int n = 1 << k;
  std::vector<std::uint8_t> leq(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  OrderedStructure s;
  s.kind = StructureKind::boolean_algebra;
  s.join_table.resize(leq.size());
  s.meet_table.resize(leq.size());
  s.complement.resize(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    s.names.push_back(subset_name(atoms, static_cast<unsigned>(a)));
    s.complement[static_cast<std::size_t>(a)] = (n - 1) & ~a;
    for (int b = 0; b < n; ++b) {
      const auto c = static_cast<std::size_t>(a * n + b);
      leq[c] = (a & ~b) == 0;
      s.join_table[c] = a | b;
      s.meet_table[c] = a & b;
    }
  }
  s.poset = FinitePoset::unchecked(n, std::move(leq));
  s.bottom = 0;
  s.top = n - 1;
  return s;
}

OrderedStructure boolean_algebra(int atoms) {
  std::vector<std::string> names;
  for (int i = 0; i < atoms; ++i) names.push_back("a" + std::to_string(i + 1));
  return boolean_algebra(names);
}

}  // namespace supamal
