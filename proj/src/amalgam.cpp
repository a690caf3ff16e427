#include "supamal/amalgam.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "supamal/completion.hpp"
#include "supamal/extension.hpp"

namespace supamal {

namespace {

// Carrier of A ∪ B: A's elements, then B ∖ C in B order.
struct UnionLayout {
  std::vector<Elem> from_a;        // A index → D index
  std::vector<Elem> from_b;        // B index → D index
  std::vector<Elem> a_of;          // D index → A index or -1
  std::vector<Elem> b_of;          // D index → B index or -1
  std::vector<Elem> c_in_a;        // C index → A index
  std::vector<Elem> c_in_b;        // C index → B index
  std::vector<std::string> names;  // D names
};

template <class S>
UnionLayout layout(const S& a, const S& b, const S& c) {
  UnionLayout u;
  auto find = [](const std::vector<std::string>& names, const std::string& n) -> Elem {
    auto it = std::find(names.begin(), names.end(), n);
    return it == names.end() ? -1 : static_cast<Elem>(it - names.begin());
  };
  for (const auto& n : c.names) {
    u.c_in_a.push_back(find(a.names, n));
    u.c_in_b.push_back(find(b.names, n));
  }
  const int na = static_cast<int>(a.names.size());
  for (int x = 0; x < na; ++x) {
    u.from_a.push_back(x);
    u.a_of.push_back(x);
    u.b_of.push_back(find(b.names, a.names[static_cast<std::size_t>(x)]));
    u.names.push_back(a.names[static_cast<std::size_t>(x)]);
  }
  for (std::size_t y = 0; y < b.names.size(); ++y) {
    Elem in_a = find(a.names, b.names[y]);
    if (in_a >= 0) {
      u.from_b.push_back(in_a);
      continue;
    }
    u.from_b.push_back(static_cast<Elem>(u.names.size()));
    u.a_of.push_back(-1);
    u.b_of.push_back(static_cast<Elem>(y));
    u.names.push_back(b.names[y]);
  }
  return u;
}

template <class LeqA, class LeqB>
std::vector<std::uint8_t> four_piece(const UnionLayout& u, LeqA leq_a, LeqB leq_b) {
  const std::size_t n = u.names.size();
  std::vector<std::uint8_t> m(n * n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const Elem ax = u.a_of[x], ay = u.a_of[y], bx = u.b_of[x], by = u.b_of[y];
      bool rel = (ax >= 0 && ay >= 0 && leq_a(ax, ay)) || (bx >= 0 && by >= 0 && leq_b(bx, by));
      for (std::size_t c = 0; c < u.c_in_a.size() && !rel; ++c) {
        const Elem ca = u.c_in_a[c], cb = u.c_in_b[c];
        rel = (ax >= 0 && by >= 0 && leq_a(ax, ca) && leq_b(cb, by)) ||
              (bx >= 0 && ay >= 0 && leq_b(bx, cb) && leq_a(ca, ay));
      }
      m[x * n + y] = rel;
    }
  return m;
}

template <class LeqA, class LeqB, class LeqD>
std::vector<Interpolant> interpolants(const UnionLayout& u, LeqA leq_a, LeqB leq_b, LeqD leq_d,
                                      const std::vector<Elem>& d_of_c) {
  std::vector<Interpolant> out;
  const std::size_t n = u.names.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (u.b_of[x] >= 0) continue;  // x ∈ A ∖ B
    for (std::size_t y = 0; y < n; ++y) {
      if (u.a_of[y] >= 0) continue;  // y ∈ B ∖ A
      const Elem ax = u.a_of[x], by = u.b_of[y];
      for (int dir = 0; dir < 2; ++dir) {
        const bool up = dir == 0;
        if (!(up ? leq_d(static_cast<Elem>(x), static_cast<Elem>(y)) : leq_d(static_cast<Elem>(y), static_cast<Elem>(x))))
          continue;
        for (std::size_t c = 0; c < u.c_in_a.size(); ++c) {
          const Elem ca = u.c_in_a[c], cb = u.c_in_b[c];
          const bool ok = up ? (leq_a(ax, ca) && leq_b(cb, by)) : (leq_b(by, cb) && leq_a(ca, ax));
          if (ok) {
            out.push_back({static_cast<Elem>(x), static_cast<Elem>(y), d_of_c[c], up});
            break;
          }
        }
      }
    }
  }
  return out;
}

OrderedStructure with_kind(OrderedStructure s, StructureKind k) {
  if (s.kind == k) return s;
  OrderedStructure r = build_structure(s.poset, k, s.names);
  r.ops = std::move(s.ops);
  r.partial_ops = std::move(s.partial_ops);
  r.comparabilities = std::move(s.comparabilities);
  return r;
}

OrderedStructure strip_ops(OrderedStructure s) {
  s.ops.clear();
  s.partial_ops.clear();
  s.comparabilities.clear();
  return s;
}

std::vector<Elem> c_positions(const UnionLayout& u) {
  std::vector<Elem> out;
  for (Elem a : u.c_in_a) out.push_back(u.from_a[static_cast<std::size_t>(a)]);
  return out;
}

}  // namespace

void check_instance(const AmalgamationInstance& inst, StructureKind kind, bool added_ops) {
  const std::pair<const OrderedStructure*, const char*> parts[] = {{&inst.a, "A"}, {&inst.b, "B"}, {&inst.c, "C"}};
  for (auto [s, label] : parts) {
    if (!implies(s->kind, kind))
      throw InputError(std::string(label) + " is a " + std::string(to_string(s->kind)) + ", not a " +
                       std::string(to_string(kind)));
    auto report = validate(*s);
    if (!report.ok()) throw InputError(std::string(label) + ": " + report.violations.front().what, report.violations.front().witnesses);
  }
  const OrderedStructure c = with_kind(added_ops ? inst.c : strip_ops(inst.c), kind);
  for (auto [host, label] : {std::pair{&inst.a, "A"}, std::pair{&inst.b, "B"}}) {
    Embedding e;
    for (const auto& n : c.names) {
      auto i = host->index_of(n);
      if (!i) throw InputError("element " + n + " of C is missing from " + label);
      e.map.push_back(*i);
    }
    auto v = check_embedding(c, *host, e, added_ops);
    if (!v) throw InputError(std::string("C is not a substructure of ") + label + ": " + v.reason, v.witnesses);
  }
  for (const auto& n : inst.a.names)
    if (inst.b.index_of(n) && !inst.c.index_of(n))
      throw InputError("element " + n + " lies in A and B but not in C");
}

std::vector<std::uint8_t> four_piece_relation(const AmalgamationInstance& inst) {
  const UnionLayout u = layout(inst.a, inst.b, inst.c);
  return four_piece(u, [&](Elem x, Elem y) { return inst.a.leq(x, y); }, [&](Elem x, Elem y) { return inst.b.leq(x, y); });
}

SuperamalgamResult jonsson_poset_amalgam(const AmalgamationInstance& inst) {
  check_instance(inst, StructureKind::poset, false);
  const UnionLayout u = layout(inst.a, inst.b, inst.c);
  auto leq_a = [&](Elem x, Elem y) { return inst.a.leq(x, y); };
  auto leq_b = [&](Elem x, Elem y) { return inst.b.leq(x, y); };
  auto m = four_piece(u, leq_a, leq_b);
  const int n = static_cast<int>(u.names.size());
  SuperamalgamResult r;
  r.instance = inst;
  r.d = build_structure(FinitePoset::unchecked(n, std::move(m)), StructureKind::poset, u.names);
  r.embed_a.map = u.from_a;
  r.embed_b.map = u.from_b;
  r.interpolants = interpolants(u, leq_a, leq_b, [&](Elem x, Elem y) { return r.d.leq(x, y); }, c_positions(u));
  return r;
}

SuperamalgamResult amalgamate(const AmalgamationInstance& inst, StructureKind kind) {
  if (kind == StructureKind::boolean_algebra) return boolean_amalgam(inst);
  if (kind == StructureKind::distributive_lattice)
    throw InputError("distributive lattices lack the strong amalgamation property; no amalgam is constructed");
  AmalgamationInstance base{strip_ops(inst.a), strip_ops(inst.b), strip_ops(inst.c)};
  check_instance(base, kind, false);
  SuperamalgamResult r = jonsson_poset_amalgam(
      {with_kind(base.a, StructureKind::poset), with_kind(base.b, StructureKind::poset), with_kind(base.c, StructureKind::poset)});
  r.instance = base;
  if (kind == StructureKind::poset) return r;
  Completion comp = macneille_completion(r.d);
  r.completed = comp.lattice.size() > r.d.size();
  r.d = build_structure(comp.lattice.poset, kind, comp.lattice.names);
  return r;
}

SuperamalgamResult boolean_amalgam(const AmalgamationInstance& inst) {
  AmalgamationInstance base{strip_ops(inst.a), strip_ops(inst.b), strip_ops(inst.c)};
  check_instance(base, StructureKind::boolean_algebra, false);
  const auto& A = base.a;
  const auto& B = base.b;
  const auto& C = base.c;
  auto atoms = [](const OrderedStructure& s) {
    std::vector<Elem> out;
    for (int x = 0; x < s.size(); ++x)
      if (x != *s.bottom && s.poset.lower_covers(x).size() == 1 && s.poset.lower_covers(x)[0] == *s.bottom) out.push_back(x);
    return out;
  };
  const auto atoms_a = atoms(A), atoms_b = atoms(B), atoms_c = atoms(C);
  auto c_atom_above = [&](const OrderedStructure& host, Elem p) {
    for (std::size_t i = 0; i < atoms_c.size(); ++i)
      if (host.leq(p, host.element(C.names[static_cast<std::size_t>(atoms_c[i])]))) return static_cast<int>(i);
    throw Error("atom lies below no atom of C");
  };
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem p : atoms_a)
    for (Elem q : atoms_b)
      if (c_atom_above(A, p) == c_atom_above(B, q)) pairs.emplace_back(p, q);
  if (pairs.size() > 12) throw BoundExceeded("Boolean amalgam would have more than 12 atoms");

  SuperamalgamResult r;
  r.instance = base;
  OrderedStructure d = boolean_algebra(static_cast<int>(pairs.size()));
  auto image = [&](const OrderedStructure& host, Elem x, bool left) {
    Elem mask = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (host.leq(left ? pairs[i].first : pairs[i].second, x)) mask |= 1 << i;
    return mask;
  };
  std::vector<std::string> names(static_cast<std::size_t>(d.size()));
  std::vector<std::uint8_t> named(static_cast<std::size_t>(d.size()), 0);
  for (int x = 0; x < A.size(); ++x) {
    Elem m = image(A, x, true);
    r.embed_a.map.push_back(m);
    names[static_cast<std::size_t>(m)] = A.names[static_cast<std::size_t>(x)];
    named[static_cast<std::size_t>(m)] = 1;
  }
  for (int y = 0; y < B.size(); ++y) {
    Elem m = image(B, y, false);
    r.embed_b.map.push_back(m);
    if (named[static_cast<std::size_t>(m)] && names[static_cast<std::size_t>(m)] != B.names[static_cast<std::size_t>(y)])
      throw Error("Boolean amalgam identified elements of A and B outside C");
    names[static_cast<std::size_t>(m)] = B.names[static_cast<std::size_t>(y)];
    named[static_cast<std::size_t>(m)] = 1;
  }
  std::set<std::string> used(names.begin(), names.end());
  int counter = 0;
  for (int m = 0; m < d.size(); ++m) {
    if (named[static_cast<std::size_t>(m)]) continue;
    std::string nm;
    do {
      nm = "#" + std::to_string(++counter);
    } while (used.count(nm));
    names[static_cast<std::size_t>(m)] = nm;
    used.insert(nm);
    r.completed = true;
  }
  d.names = std::move(names);
  r.d = std::move(d);

  const UnionLayout u = layout(A, B, C);
  std::vector<Elem> to_d(u.names.size());
  for (std::size_t i = 0; i < u.names.size(); ++i)
    to_d[i] = u.a_of[i] >= 0 ? r.embed_a(u.a_of[i]) : r.embed_b(u.b_of[i]);
  std::vector<Elem> c_d;
  for (Elem ca : u.c_in_a) c_d.push_back(r.embed_a(ca));
  auto leq_a = [&](Elem x, Elem y) { return A.leq(x, y); };
  auto leq_b = [&](Elem x, Elem y) { return B.leq(x, y); };
  r.interpolants = interpolants(
      u, leq_a, leq_b,
      [&](Elem x, Elem y) { return r.d.leq(to_d[static_cast<std::size_t>(x)], to_d[static_cast<std::size_t>(y)]); }, c_d);
  // Rewrite union positions into D indices.
  for (auto& ip : r.interpolants) {
    ip.a = to_d[static_cast<std::size_t>(ip.a)];
    ip.b = to_d[static_cast<std::size_t>(ip.b)];
  }
  return r;
}

namespace {

PartialOp glue(const Operation& oa, const OrderedStructure& A, const Embedding& ea, const Operation& ob,
               const OrderedStructure& B, const Embedding& eb) {
  PartialOp g;
  g.arity = oa.arity();
  for (auto [op, host, e] : {std::tuple{&oa, &A, &ea}, std::tuple{&ob, &B, &eb}}) {
    const int n = host->size();
    for (std::size_t i = 0; i < op->table.size(); ++i) {
      Tuple t = tuple_at(i, n, op->arity());
      for (auto& x : t) x = (*e)(x);
      const Elem v = (*e)(op->table[i]);
      auto [it, inserted] = g.values.emplace(t, v);
      if (!inserted && it->second != v) throw InputError("operation " + oa.name + " disagrees between A and B on C", t);
    }
  }
  return g;
}

// Extends every glued operation over `e`; PreconditionError when impossible.
std::vector<Operation> extend_all(const OrderedStructure& e, const std::vector<const Operation*>& ops_a,
                                  const std::map<std::string, PartialOp>& glued,
                                  const std::vector<Comparability>& comps) {
  std::vector<Operation> out;
  std::map<std::string, std::vector<std::string>> groups;  // property string → names
  for (const Operation* o : ops_a) groups[o->property.to_string()].push_back(o->name);
  for (const Operation* o : ops_a) {
    auto v = check_necessary(o->property, e, glued.at(o->name));
    if (!v)
      throw Error("glued operation " + o->name + " violates the extension condition (" + v.reason +
                      "); the base class does not superamalgamate here",
                  v.witnesses);
  }
  for (const auto& [prop, names] : groups) {
    const PropertySpec w = PropertySpec::parse(prop);
    std::vector<std::pair<Elem, Elem>> order;
    for (const auto& c : comps) {
      auto lo = std::find(names.begin(), names.end(), c.lower);
      auto hi = std::find(names.begin(), names.end(), c.upper);
      if (lo != names.end() && hi != names.end())
        order.emplace_back(static_cast<Elem>(lo - names.begin()), static_cast<Elem>(hi - names.begin()));
    }
    if (order.empty()) {
      for (const auto& n : names) out.push_back({n, w, extend(w, e, glued.at(n))});
      continue;
    }
    ComparabilitySpec spec;
    spec.names = names;
    spec.order = FinitePoset::from_pairs(static_cast<int>(names.size()), order);
    for (const auto& n : names) spec.ops.push_back(glued.at(n));
    for (auto& [n, table] : extend_family(w, e, spec)) out.push_back({n, w, std::move(table)});
  }
  std::sort(out.begin(), out.end(), [](const Operation& x, const Operation& y) { return x.name < y.name; });
  return out;
}

}  // namespace

SuperamalgamResult amalgamate_expanded(const AmalgamationInstance& inst, ExpandedOptions options) {
  const StructureKind kind = inst.a.kind;
  if (inst.b.kind != kind || inst.c.kind != kind) throw InputError("A, B and C must share one kind");
  check_instance(inst, kind, true);
  std::vector<const Operation*> ops_a;
  for (const auto& o : inst.a.ops) {
    const Operation* ob = inst.b.op(o.name);
    const Operation* oc = inst.c.op(o.name);
    if (!ob || !oc) throw InputError("operation " + o.name + " must be present in A, B and C");
    if (!(ob->property == o.property && oc->property == o.property))
      throw InputError("operation " + o.name + " has different properties in A, B and C");
    if (o.property.kind == PropertyCase::C3 && !implies(kind, StructureKind::lattice))
      throw InputError("C3 operations need lattice-ordered structures");
    ops_a.push_back(&o);
  }
  if (inst.b.ops.size() != ops_a.size() || inst.c.ops.size() != ops_a.size())
    throw InputError("A, B and C must carry the same operations");
  std::set<Comparability> comps(inst.a.comparabilities.begin(), inst.a.comparabilities.end());
  comps.insert(inst.b.comparabilities.begin(), inst.b.comparabilities.end());
  comps.insert(inst.c.comparabilities.begin(), inst.c.comparabilities.end());
  for (const auto& c : comps) {
    const Operation* lo = inst.a.op(c.lower);
    const Operation* hi = inst.a.op(c.upper);
    if (!lo || !hi) throw InputError("comparability names an unknown operation");
    if (!(lo->property == hi->property))
      throw InputError("comparability conditions relate operations with the same property only");
  }
  const std::vector<Comparability> comp_list(comps.begin(), comps.end());

  SuperamalgamResult r = amalgamate(inst, kind);
  r.instance = inst;

  auto glue_over = [&](const OrderedStructure& host) {
    std::map<std::string, PartialOp> glued;
    for (const Operation* o : ops_a)
      glued[o->name] = glue(*o, inst.a, r.embed_a, *inst.b.op(o->name), inst.b, r.embed_b);
    (void)host;
    return glued;
  };

  OrderedStructure e = r.d;
  bool done = false;
  if (kind == StructureKind::poset && options.prefer_union) {
    try {
      e.ops = extend_all(e, ops_a, glue_over(e), comp_list);
      done = true;
    } catch (const PreconditionError&) {
      e = r.d;
    }
  }
  if (!done) {
    if (kind == StructureKind::poset && !ops_a.empty()) {
      Completion comp = macneille_completion(r.d);
      r.completed = comp.lattice.size() > r.d.size();
      e = build_structure(comp.lattice.poset, StructureKind::poset, comp.lattice.names);
    }
    e.ops = extend_all(e, ops_a, glue_over(e), comp_list);
  }
  e.comparabilities = comp_list;
  r.d = std::move(e);
  return r;
}

Verdict verify_superamalgam(const SuperamalgamResult& r) {
  const auto& inst = r.instance;
  const StructureKind kind = inst.a.kind;
  OrderedStructure a = with_kind(inst.a, kind), b = with_kind(inst.b, kind);
  if (auto v = check_embedding(a, r.d, r.embed_a, true); !v) return Verdict::fail("A does not embed: " + v.reason, v.witnesses);
  if (auto v = check_embedding(b, r.d, r.embed_b, true); !v) return Verdict::fail("B does not embed: " + v.reason, v.witnesses);
  std::vector<std::uint8_t> in_a(static_cast<std::size_t>(r.d.size()), 0);
  for (Elem x : r.embed_a.map) in_a[static_cast<std::size_t>(x)] = 1;
  for (int y = 0; y < inst.b.size(); ++y) {
    const std::string& name = inst.b.names[static_cast<std::size_t>(y)];
    const bool in_c = inst.c.index_of(name).has_value();
    const Elem dy = r.embed_b(y);
    if (in_c) {
      if (dy != r.embed_a(inst.a.element(name))) return Verdict::fail("embeddings disagree on C element " + name, {dy});
    } else if (in_a[static_cast<std::size_t>(dy)]) {
      return Verdict::fail("images of A and B meet outside C at " + name, {dy});
    }
  }
  // Interpolation, both clauses, exhaustively.
  for (int x = 0; x < inst.a.size(); ++x) {
    const std::string& xn = inst.a.names[static_cast<std::size_t>(x)];
    if (inst.b.index_of(xn)) continue;
    for (int y = 0; y < inst.b.size(); ++y) {
      const std::string& yn = inst.b.names[static_cast<std::size_t>(y)];
      if (inst.a.index_of(yn)) continue;
      const Elem dx = r.embed_a(x), dy = r.embed_b(y);
      for (int dir = 0; dir < 2; ++dir) {
        const bool up = dir == 0;
        if (!(up ? r.d.leq(dx, dy) : r.d.leq(dy, dx))) continue;
        bool found = false;
        for (int c = 0; c < inst.c.size() && !found; ++c) {
          const std::string& cn = inst.c.names[static_cast<std::size_t>(c)];
          const Elem ca = inst.a.element(cn), cb = inst.b.element(cn);
          found = up ? (inst.a.leq(x, ca) && inst.b.leq(cb, y)) : (inst.b.leq(y, cb) && inst.a.leq(ca, x));
        }
        if (!found)
          return Verdict::fail(std::string("no interpolant in C for ") + (up ? xn + " <= " + yn : yn + " <= " + xn),
                               {dx, dy});
      }
    }
  }
  return Verdict::pass();
}

RelationalAmalgam union_relational_amalgam(const RelationalStructure& a, const RelationalStructure& b,
                                           const RelationalStructure& c) {
  for (auto [s, label] : {std::pair{&a, "A"}, std::pair{&b, "B"}, std::pair{&c, "C"}}) {
    const int n = s->size();
    if (s->r.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
      throw InputError(std::string(label) + ": relation has the wrong shape");
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          if (s->rel(x, y) && s->rel(y, z) && !s->rel(x, z))
            throw PreconditionError(std::string(label) + ": R is not transitive", {x, y, z});
    for (const auto& o : s->ops)
      if (o.table.size() != static_cast<std::size_t>(n)) throw InputError(std::string(label) + ": operation " + o.name + " is not total");
  }
  const UnionLayout u = layout(a, b, c);
  for (std::size_t i = 0; i < u.c_in_a.size(); ++i)
    if (u.c_in_a[i] < 0 || u.c_in_b[i] < 0) throw InputError("element " + c.names[i] + " of C is missing from A or B");
  for (std::size_t x = 0; x < u.names.size(); ++x)
    if (u.a_of[x] >= 0 && u.b_of[x] >= 0 &&
        std::find(c.names.begin(), c.names.end(), u.names[x]) == c.names.end())
      throw InputError("element " + u.names[x] + " lies in A and B but not in C");
  for (std::size_t i = 0; i < u.c_in_a.size(); ++i)
    for (std::size_t j = 0; j < u.c_in_a.size(); ++j) {
      const bool rc = c.rel(static_cast<Elem>(i), static_cast<Elem>(j));
      if (a.rel(u.c_in_a[i], u.c_in_a[j]) != rc || b.rel(u.c_in_b[i], u.c_in_b[j]) != rc)
        throw InputError("R disagrees on C", {static_cast<Elem>(i), static_cast<Elem>(j)});
    }

  RelationalAmalgam out;
  auto ra = [&](Elem x, Elem y) { return a.rel(x, y); };
  auto rb = [&](Elem x, Elem y) { return b.rel(x, y); };
  out.d.names = u.names;
  out.d.r = four_piece(u, ra, rb);
  const int n = out.d.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (out.d.rel(x, y) && out.d.rel(y, z) && !out.d.rel(x, z))
          throw PreconditionError("the four-piece relation is not transitive; the base class is not closed under it",
                                  {x, y, z});
  out.embed_a = u.from_a;
  out.embed_b = u.from_b;
  out.interpolants = interpolants(u, ra, rb, [&](Elem x, Elem y) { return out.d.rel(x, y); }, c_positions(u));

  for (const auto& oa : a.ops) {
    auto find_op = [&](const RelationalStructure& s) -> const RelationalStructure::UnaryOp& {
      for (const auto& o : s.ops)
        if (o.name == oa.name) {
          if (o.antitone != oa.antitone) throw InputError("operation " + oa.name + " changes monotonicity type");
          return o;
        }
      throw InputError("operation " + oa.name + " must be present in A, B and C");
    };
    const auto& ob = find_op(b);
    const auto& oc = find_op(c);
    RelationalStructure::UnaryOp k{oa.name, oa.antitone, std::vector<Elem>(static_cast<std::size_t>(n), -1)};
    for (int x = 0; x < a.size(); ++x) k.table[static_cast<std::size_t>(u.from_a[static_cast<std::size_t>(x)])] = u.from_a[static_cast<std::size_t>(oa.table[static_cast<std::size_t>(x)])];
    for (int y = 0; y < b.size(); ++y) {
      const Elem dy = u.from_b[static_cast<std::size_t>(y)];
      const Elem v = u.from_b[static_cast<std::size_t>(ob.table[static_cast<std::size_t>(y)])];
      if (k.table[static_cast<std::size_t>(dy)] >= 0 && k.table[static_cast<std::size_t>(dy)] != v)
        throw InputError("operation " + oa.name + " disagrees between A and B on C", {dy});
      k.table[static_cast<std::size_t>(dy)] = v;
    }
    for (std::size_t i = 0; i < c.names.size(); ++i) {
      const Elem d = u.from_a[static_cast<std::size_t>(u.c_in_a[i])];
      const auto& target = c.names[static_cast<std::size_t>(oc.table[i])];
      if (u.names[static_cast<std::size_t>(k.table[static_cast<std::size_t>(d)])] != target)
        throw InputError("operation " + oa.name + " of C differs from its restriction", {d});
    }
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (!out.d.rel(x, y)) continue;
        const Elem kx = k.table[static_cast<std::size_t>(x)], ky = k.table[static_cast<std::size_t>(y)];
        if (!(oa.antitone ? out.d.rel(ky, kx) : out.d.rel(kx, ky)))
          throw PreconditionError("glued operation " + oa.name + " is not R-" + (oa.antitone ? "antitone" : "isotone"), {x, y});
      }
    out.d.ops.push_back(std::move(k));
  }
  if (b.ops.size() != a.ops.size() || c.ops.size() != a.ops.size())
    throw InputError("A, B and C must carry the same operations");
  return out;
}

}  // namespace supamal
