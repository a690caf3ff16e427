#include <algorithm>
#include <map>
#include <optional>
#include <string>

#include "acceptance.hpp"
#include "supamal/amalgam.hpp"
#include "supamal/canonical.hpp"
#include "supamal/enumerate.hpp"
#include "supamal/extension.hpp"

namespace acceptance {

using namespace supamal;

namespace {

// A structure with a closed subset marked as the shared part.
struct Marked {
  OrderedStructure s;
  std::vector<Elem> sub;  // sorted
};

// Shared elements are named c<k> by canonical position inside the shared
// part, so two sides with equal signatures agree on C by name.
OrderedStructure rename(const Marked& m, const std::string& prefix) {
  const auto shared = restrict_to(m.s, m.sub).structure;
  const auto lab = canonical_form(shared).labeling;
  std::vector<std::string> names(static_cast<std::size_t>(m.s.size()));
  for (int x = 0; x < m.s.size(); ++x) names[x] = prefix + std::to_string(x);
  for (std::size_t i = 0; i < m.sub.size(); ++i) names[m.sub[i]] = "c" + std::to_string(lab[i]);
  OrderedStructure out = m.s;
  out.names = std::move(names);
  return out;
}

std::string shared_signature(const Marked& m) { return canonical_form(restrict_to(m.s, m.sub).structure).signature; }

AmalgamationInstance instance_of(const Marked& a, const Marked& b) {
  auto ra = rename(a, "a");
  auto rb = rename(b, "b");
  auto c = restrict_to(ra, a.sub).structure;
  return {std::move(ra), std::move(rb), std::move(c)};
}

std::vector<Marked> all_marked(StructureKind kind, int max_size) {
  std::vector<Marked> out;
  for (int n = 0; n <= max_size; ++n)
    for (const auto& s : enumerate_structures(kind, n))
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<Elem> sub;
        for (int x = 0; x < n; ++x)
          if (mask >> x & 1) sub.push_back(x);
        try {
          restrict_to(s, sub);
        } catch (const PreconditionError&) {
          continue;
        }
        out.push_back({s, sub});
      }
  return out;
}

// A random closed subset of a random structure of `kind` with 1..max_size elements.
Marked random_marked(StructureKind kind, int max_size) {
  for (;;) {
    const auto& pool = enumerate_structures(kind, uniform(1, max_size));
    if (pool.empty()) continue;
    const auto& s = pool[static_cast<std::size_t>(uniform(0, static_cast<int>(pool.size()) - 1))];
    std::vector<Elem> gens;
    for (int x = 0; x < s.size(); ++x)
      if (coin(0.35)) gens.push_back(x);
    auto sub = generated_substructure(s, gens, false).inclusion.map;
    std::sort(sub.begin(), sub.end());
    return {s, sub};
  }
}

// B with a closed subset isomorphic to the shared part of `a`.
std::optional<Marked> random_partner(const Marked& a, StructureKind kind, int max_size,
                                     const std::vector<Marked>& pool) {
  const std::string sig = shared_signature(a);
  std::vector<const Marked*> hits;
  for (const auto& m : pool)
    if (m.sub.size() == a.sub.size() && m.s.size() <= max_size && shared_signature(m) == sig) hits.push_back(&m);
  (void)kind;
  if (hits.empty()) return std::nullopt;
  return *hits[static_cast<std::size_t>(uniform(0, static_cast<int>(hits.size()) - 1))];
}

// Jónsson relation compared with the transitive closure of ≤A ∪ ≤B.
bool four_piece_is_closure(const SuperamalgamResult& r) {
  const int n = r.d.size();
  oracle::Matrix u(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
  auto add = [&](const OrderedStructure& s, const Embedding& e) {
    for (int x = 0; x < s.size(); ++x)
      for (int y = 0; y < s.size(); ++y)
        if (s.leq(x, y)) u[e(x)][e(y)] = true;
  };
  add(r.instance.a, r.embed_a);
  add(r.instance.b, r.embed_b);
  const auto closed = oracle::transitive_closure(u);
  const auto rel = four_piece_relation(r.instance);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (closed[x][y] != (rel[static_cast<std::size_t>(x * n + y)] != 0)) return false;
  return true;
}

// Every existing join (meet) of a nonempty subset of `s` is sent to the
// corresponding bound in D.
bool preserves_bounds(const OrderedStructure& s, const OrderedStructure& d, const Embedding& e, bool joins,
                      bool meets) {
  const auto ms = matrix_of(s), md = matrix_of(d);
  for (unsigned mask = 1; mask < (1u << s.size()); ++mask) {
    std::vector<int> sub, img;
    for (int x = 0; x < s.size(); ++x)
      if (mask >> x & 1) {
        sub.push_back(x);
        img.push_back(e(x));
      }
    if (joins)
      if (auto j = oracle::lub(ms, sub); j && oracle::lub(md, img) != std::optional<int>(e(*j))) return false;
    if (meets)
      if (auto m = oracle::glb(ms, sub); m && oracle::glb(md, img) != std::optional<int>(e(*m))) return false;
  }
  return true;
}

// Boolean instance: C has `c` atoms, each split into 1+ atoms in A and B.
AmalgamationInstance boolean_instance(int max_atoms) {
  const int c = uniform(1, max_atoms);
  auto split = [&](const std::string& prefix) {
    std::vector<int> parts(static_cast<std::size_t>(c), 1);
    for (int extra = uniform(0, max_atoms - c); extra > 0; --extra) ++parts[uniform(0, c - 1)];
    std::vector<std::string> atoms;
    std::vector<unsigned> under(static_cast<std::size_t>(c), 0);  // atoms below each C-atom
    for (int i = 0; i < c; ++i)
      for (int k = 0; k < parts[i]; ++k) {
        under[i] |= 1u << atoms.size();
        atoms.push_back(prefix + std::to_string(atoms.size()));
      }
    OrderedStructure s = boolean_algebra(atoms);
    for (unsigned m = 0; m < (1u << atoms.size()); ++m) s.names[m] = prefix + std::to_string(m);
    for (unsigned cm = 0; cm < (1u << c); ++cm) {
      unsigned m = 0;
      for (int i = 0; i < c; ++i)
        if (cm >> i & 1) m |= under[i];
      s.names[m] = "c" + std::to_string(cm);
    }
    return s;
  };
  OrderedStructure cs = boolean_algebra(c);
  for (unsigned cm = 0; cm < (1u << c); ++cm) cs.names[cm] = "c" + std::to_string(cm);
  return {split("a"), split("b"), cs};
}

// a·b = 0 in D forces some c in C with a ≤ c and b ≤ −c.
bool boolean_interpolation(const SuperamalgamResult& r) {
  const auto& [a, b, c] = r.instance;
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < b.size(); ++y) {
      if (r.d.meet(r.embed_a(x), r.embed_b(y)) != *r.d.bottom) continue;
      bool found = false;
      for (int z = 0; z < c.size() && !found; ++z) {
        const Elem za = a.element(c.names[z]);
        const Elem zb = b.element(c.names[c.complement[z]]);
        found = a.leq(x, za) && b.leq(y, zb);
      }
      if (!found) return false;
    }
  return true;
}

std::string label(const AmalgamationInstance& i) {
  return std::to_string(i.a.size()) + "/" + std::to_string(i.b.size()) + "/" + std::to_string(i.c.size());
}

}  // namespace

Result superamalgamation() {
  Tally tally;
  std::size_t poset_triples = 0;
  {
    const auto marked = all_marked(StructureKind::poset, 4);
    std::map<std::string, std::vector<const Marked*>> by_sig;
    for (const auto& m : marked) by_sig[shared_signature(m)].push_back(&m);
    for (const auto& [sig, group] : by_sig)
      for (const Marked* a : group)
        for (const Marked* b : group) {
          const auto inst = instance_of(*a, *b);
          ++poset_triples;
          try {
            const auto r = jonsson_poset_amalgam(inst);
            const auto v = verify_superamalgam(r);
            tally.check(static_cast<bool>(v), "poset " + label(inst) + ": " + v.reason);
            tally.check(four_piece_is_closure(r), "poset " + label(inst) + ": four-piece relation");
          } catch (const Error& e) {
            tally.fail("poset " + label(inst) + ": " + e.what());
          }
        }
  }

  std::map<std::string, int> sampled;
  for (StructureKind kind : {StructureKind::join_semilattice, StructureKind::meet_semilattice, StructureKind::lattice}) {
    const auto pool = all_marked(kind, 5);
    const std::string name(to_string(kind));
    while (sampled[name] < 200) {
      const Marked a = random_marked(kind, 5);
      const auto b = random_partner(a, kind, 5, pool);
      if (!b) continue;
      const auto inst = instance_of(a, *b);
      ++sampled[name];
      try {
        const auto r = amalgamate(inst, kind);
        const auto v = verify_superamalgam(r);
        tally.check(static_cast<bool>(v), name + " " + label(inst) + ": " + v.reason);
        tally.check(validate(r.d).ok() && r.d.kind == kind, name + " " + label(inst) + ": D is not of the kind");
        const bool joins = has_join(kind), meets = has_meet(kind);
        tally.check(preserves_bounds(inst.a, r.d, r.embed_a, joins, meets) &&
                        preserves_bounds(inst.b, r.d, r.embed_b, joins, meets),
                    name + " " + label(inst) + ": a bound is not preserved");
      } catch (const Error& e) {
        tally.fail(name + " " + label(inst) + ": " + e.what());
      }
    }
  }

  while (sampled["boolean"] < 200) {
    const auto inst = boolean_instance(3);
    ++sampled["boolean"];
    try {
      const auto r = boolean_amalgam(inst);
      const auto v = verify_superamalgam(r);
      tally.check(static_cast<bool>(v), "boolean " + label(inst) + ": " + v.reason);
      tally.check(validate(r.d).ok() && r.d.kind == StructureKind::boolean_algebra,
                  "boolean " + label(inst) + ": D is not Boolean");
      tally.check(boolean_interpolation(r), "boolean " + label(inst) + ": interpolation fails");
    } catch (const Error& e) {
      tally.fail("boolean " + label(inst) + ": " + e.what());
    }
  }
  std::string summary = std::to_string(poset_triples) + " poset triples";
  for (const auto& [k, n] : sampled) summary += ", " + std::to_string(n) + " " + k;
  return tally.result(summary);
}

// ---- expanded instances

namespace {

struct OpPlan {
  PropertySpec w;
  bool comparable = false;
};

std::vector<Tuple> tuples(int n, int arity) {
  std::vector<Tuple> out;
  for (std::size_t i = 0; i < ipow(static_cast<std::size_t>(n), arity); ++i) out.push_back(tuple_at(i, n, arity));
  return out;
}

std::optional<std::vector<Elem>> try_extend(const PropertySpec& w, const OrderedStructure& s, const PartialOp& g) {
  if (!check_necessary(w, s, g)) return std::nullopt;
  try {
    return extend(w, s, g);
  } catch (const PreconditionError&) {
    return std::nullopt;
  }
}

bool pointwise_leq(const OrderedStructure& s, const std::vector<Elem>& lo, const std::vector<Elem>& hi) {
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (!s.leq(lo[i], hi[i])) return false;
  return true;
}

// A total operation on `s` extending `fixed`, with random extra values;
// optionally pointwise above `floor`.
std::optional<std::vector<Elem>> random_op(const PropertySpec& w, const OrderedStructure& s, const PartialOp& fixed,
                                           const std::vector<Elem>* floor) {
  const auto all = tuples(s.size(), w.arity);
  for (int attempt = 0; attempt < 30; ++attempt) {
    PartialOp g = fixed;
    g.arity = w.arity;
    const double p = attempt < 20 ? 0.4 : 0.0;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (g.defined(all[i]) || !coin(p)) continue;
      std::vector<Elem> choices;
      for (int v = 0; v < s.size(); ++v)
        if (!floor || s.leq((*floor)[i], v)) choices.push_back(v);
      g.values[all[i]] = choices[static_cast<std::size_t>(uniform(0, static_cast<int>(choices.size()) - 1))];
    }
    auto k = try_extend(w, s, g);
    if (k && (!floor || pointwise_leq(s, *floor, *k))) return k;
  }
  return std::nullopt;
}

// Restriction of `op` on C, carried into `s` by element names.
PartialOp carried(const OrderedStructure& c, const std::vector<Elem>& op, int arity, const OrderedStructure& s) {
  PartialOp g;
  g.arity = arity;
  for (const auto& t : tuples(c.size(), arity)) {
    Tuple u;
    for (Elem x : t) u.push_back(s.element(c.names[x]));
    g.values[u] = s.element(c.names[op[tuple_index(t, c.size())]]);
  }
  return g;
}

// Adds op `name` to all three structures, agreeing on C; optionally above `below`.
bool add_op(AmalgamationInstance& inst, const std::string& name, const PropertySpec& w, const std::string& below) {
  auto floor_of = [&](const OrderedStructure& s) -> const std::vector<Elem>* {
    return below.empty() ? nullptr : &s.op(below)->table;
  };
  auto kc = random_op(w, inst.c, PartialOp{w.arity, {}}, floor_of(inst.c));
  if (!kc) return false;
  auto ka = random_op(w, inst.a, carried(inst.c, *kc, w.arity, inst.a), floor_of(inst.a));
  if (!ka) return false;
  auto kb = random_op(w, inst.b, carried(inst.c, *kc, w.arity, inst.b), floor_of(inst.b));
  if (!kb) return false;
  inst.c.set_op({name, w, *kc});
  inst.a.set_op({name, w, *ka});
  inst.b.set_op({name, w, *kb});
  if (!below.empty())
    for (auto* s : {&inst.a, &inst.b, &inst.c}) s->comparabilities.push_back({below, name});
  return true;
}

AmalgamationInstance base_instance(StructureKind kind, bool binary, const std::vector<Marked>& pool) {
  if (kind == StructureKind::boolean_algebra) return boolean_instance(binary ? 2 : 3);
  for (;;) {
    const Marked a = random_marked(kind, 4);
    if (auto b = random_partner(a, kind, 4, pool)) return instance_of(a, *b);
  }
}

// Independent checks of one added operation on the result.
void check_op(Tally& tally, const SuperamalgamResult& r, const std::string& name, const std::string& where) {
  const Operation* od = r.d.op(name);
  if (!od) {
    tally.fail(where + ": D lacks " + name);
    return;
  }
  const auto& w = od->property;
  tally.check(static_cast<bool>(verify_property(r.d, w, od->table)), where + ": verify_property fails for " + name);
  const auto md = matrix_of(r.d);
  const oracle::Table t(od->table.begin(), od->table.end());
  if (w.kind == PropertyCase::C1)
    tally.check(oracle::c1(md, t, w.isotone, w.antitone), where + ": oracle C1 fails");
  else
    tally.check(oracle::has_property(std::string(to_string(w.kind)), md, t), where + ": oracle property fails");
  auto preserved = [&](const OrderedStructure& s, const Embedding& e) {
    const Operation* os = s.op(name);
    for (const auto& tup : tuples(s.size(), w.arity)) {
      Tuple img;
      for (Elem x : tup) img.push_back(e(x));
      if (od->at(img, r.d.size()) != e(os->at(tup, s.size()))) return false;
    }
    return true;
  };
  tally.check(preserved(r.instance.a, r.embed_a) && preserved(r.instance.b, r.embed_b),
              where + ": embedding does not preserve " + name);
}

}  // namespace

Result expanded_amalgamation() {
  Tally tally;
  const StructureKind kinds[] = {StructureKind::poset, StructureKind::join_semilattice, StructureKind::lattice,
                                 StructureKind::boolean_algebra};
  const PropertySpec specs[] = {PropertySpec::unary(PropertyCase::B1), PropertySpec::unary(PropertyCase::B3),
                                PropertySpec::unary(PropertyCase::B5), PropertySpec::c1(2, 1, 1)};
  std::size_t instances = 0, with_pairs = 0, unions = 0;
  for (StructureKind kind : kinds) {
    const auto pool = kind == StructureKind::boolean_algebra ? std::vector<Marked>{} : all_marked(kind, 4);
    for (const auto& w : specs) {
      const bool unary = w.arity == 1;
      const std::string group = std::string(to_string(kind)) + "/" + w.to_string();
      int done = 0;
      while (done < 100) {
        auto inst = base_instance(kind, !unary, pool);
        if (!add_op(inst, "K", w, "")) continue;
        const bool pair = unary && done % 3 == 0;
        if (pair && !add_op(inst, "L", w, "K")) continue;
        ++done;
        ++instances;
        with_pairs += pair;
        const std::string where = group + " #" + std::to_string(done);
        try {
          ExpandedOptions opt;
          opt.prefer_union = kind == StructureKind::poset && coin();
          const auto r = amalgamate_expanded(inst, opt);
          unions += opt.prefer_union && !r.completed;
          const auto v = verify_superamalgam(r);
          tally.check(static_cast<bool>(v), where + ": " + v.reason);
          tally.check(validate(r.d).ok(), where + ": D does not validate");
          check_op(tally, r, "K", where);
          if (pair) {
            check_op(tally, r, "L", where);
            tally.check(pointwise_leq(r.d, r.d.op("K")->table, r.d.op("L")->table), where + ": K <= L lost");
          }
        } catch (const Error& e) {
          tally.fail(where + ": " + e.what());
        }
      }
    }
  }
  return tally.result(std::to_string(instances) + " instances, " + std::to_string(with_pairs) +
                      " with a comparable pair, " + std::to_string(unions) + " kept as a union");
}

}  // namespace acceptance
