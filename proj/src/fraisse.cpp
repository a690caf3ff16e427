#include "supamal/fraisse.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "supamal/amalgam.hpp"
#include "supamal/canonical.hpp"
#include "supamal/enumerate.hpp"
#include "supamal/extension.hpp"

namespace supamal {

namespace {

bool needs_root(StructureKind k) { return has_constants(k); }

void check_spec(const ClassSpec& spec) {
  if (needs_root(spec.kind) && !spec.root)
    throw InputError(std::string(to_string(spec.kind)) + " classes need a root for joint embedding");
  if (spec.root) {
    auto report = validate(*spec.root);
    if (!report.ok()) throw InputError("root: " + report.violations.front().what);
  }
}

OrderedStructure empty_member(const ClassSpec& spec) {
  OrderedStructure s = build_structure(FinitePoset::chain(0), spec.kind);
  for (const auto& [name, w] : spec.ops) s.set_op({name, w, {}});
  return s;
}

bool contains_root(const ClassSpec& spec, const OrderedStructure& s) {
  if (!spec.root) return true;
  bool found = false;
  for_each_embedding(*spec.root, s, std::vector<Elem>(static_cast<std::size_t>(spec.root->size()), -1),
                     [&](const Embedding&) { return !(found = true); });
  return found;
}

// Root images must be fixed by embeddings between members; with a root every
// member contains exactly one copy since the root is ∅-generated.
std::vector<Elem> root_image(const ClassSpec& spec, const OrderedStructure& s) {
  std::vector<Elem> out;
  if (!spec.root) return out;
  for_each_embedding(*spec.root, s, std::vector<Elem>(static_cast<std::size_t>(spec.root->size()), -1),
                     [&](const Embedding& e) {
                       out = e.map;
                       return false;
                     });
  return out;
}

}  // namespace

std::vector<OrderedStructure> age(const ClassSpec& spec, int max_size) {
  check_spec(spec);
  std::vector<OrderedStructure> out;
  for (int size = 0; size <= max_size; ++size) {
    std::vector<std::pair<std::string, OrderedStructure>> found;
    std::set<std::string> seen;
    for (const auto& base : enumerate_structures(spec.kind, size)) {
      std::vector<OrderedStructure> partial{base};
      for (const auto& [name, w] : spec.ops) {
        if (w.kind == PropertyCase::C3 && !implies(spec.kind, StructureKind::lattice))
          throw InputError("C3 operations need lattice-ordered classes");
        std::vector<OrderedStructure> next;
        for (const auto& s : partial)
          enumerate_extensions(w, s, PartialOp{w.arity, {}}, [&](const std::vector<Elem>& t) {
            OrderedStructure x = s;
            x.set_op({name, w, t});
            next.push_back(std::move(x));
            return true;
          });
        partial = std::move(next);
      }
      for (auto& s : partial) {
        if (!contains_root(spec, s)) continue;
        auto cf = canonical_form(s);
        if (!seen.insert(cf.signature).second) continue;
        std::vector<Elem> perm = cf.labeling;
        found.emplace_back(cf.signature, permute(s, perm));
      }
    }
    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [sig, s] : found) out.push_back(std::move(s));
  }
  return out;
}

void for_each_embedding(const OrderedStructure& a, const OrderedStructure& m, const std::vector<Elem>& fixed,
                        const std::function<bool(const Embedding&)>& visit) {
  const int n = a.size();
  const int size = m.size();
  Embedding e;
  e.map.assign(static_cast<std::size_t>(n), -1);
  std::vector<std::uint8_t> used(static_cast<std::size_t>(size), 0);
  for (int x = 0; x < n; ++x) {
    const Elem f = fixed.empty() ? -1 : fixed[static_cast<std::size_t>(x)];
    if (f < 0) continue;
    if (used[static_cast<std::size_t>(f)]) return;
    used[static_cast<std::size_t>(f)] = 1;
  }
  // Unary operations are checked as soon as both ends are placed.
  std::vector<const Operation*> unary;
  for (const auto& o : a.ops)
    if (o.arity() == 1 && m.op(o.name)) unary.push_back(&o);
  bool stop = false;
  std::function<void(int)> place = [&](int x) {
    if (stop) return;
    if (x == n) {
      if (check_embedding(a, m, e, true) && !visit(e)) stop = true;
      return;
    }
    const Elem f = fixed.empty() ? -1 : fixed[static_cast<std::size_t>(x)];
    for (Elem y = (f >= 0 ? f : 0); y < (f >= 0 ? f + 1 : size) && !stop; ++y) {
      if (f < 0 && used[static_cast<std::size_t>(y)]) continue;
      e.map[static_cast<std::size_t>(x)] = y;
      bool ok = true;
      for (int z = 0; z < x && ok; ++z) {
        const Elem w = e.map[static_cast<std::size_t>(z)];
        ok = a.leq(z, x) == m.leq(w, y) && a.leq(x, z) == m.leq(y, w);
      }
      for (const Operation* o : unary) {
        if (!ok) break;
        const auto& mt = m.op(o->name)->table;
        for (int z = 0; z <= x && ok; ++z) {
          const Elem img = o->table[static_cast<std::size_t>(z)];
          if (img <= x) ok = mt[static_cast<std::size_t>(e.map[static_cast<std::size_t>(z)])] == e.map[static_cast<std::size_t>(img)];
        }
      }
      if (ok) {
        if (f < 0) used[static_cast<std::size_t>(y)] = 1;
        place(x + 1);
        if (f < 0) used[static_cast<std::size_t>(y)] = 0;
      }
    }
    e.map[static_cast<std::size_t>(x)] = f;
  };
  place(0);
}

std::vector<ClassPair> class_pairs(const ClassSpec& spec, int cap) {
  std::vector<ClassPair> out;
  std::set<std::string> seen;
  for (const auto& b : age(spec, cap)) {
    const int n = b.size();
    const auto root = root_image(spec, b);
    for (std::uint32_t mask = 0; mask + 1 < (1u << n); ++mask) {
      std::vector<Elem> elems;
      for (int x = 0; x < n; ++x)
        if (mask >> x & 1u) elems.push_back(x);
      if (!std::all_of(root.begin(), root.end(), [&](Elem r) { return mask >> r & 1u; })) continue;
      auto gen = generated_substructure(b, elems);
      if (gen.structure.size() != static_cast<int>(elems.size())) continue;
      if (elems.empty() && (has_constants(spec.kind) || spec.root)) continue;
      std::vector<int> colors(static_cast<std::size_t>(n), 0);
      for (Elem x : elems) colors[static_cast<std::size_t>(x)] = 1;
      auto cf = canonical_form(b, colors);
      if (!seen.insert(cf.signature).second) continue;
      auto sub = restrict_to(b, elems);
      out.push_back({std::move(sub.structure), b, std::move(sub.inclusion)});
    }
  }
  return out;
}

namespace {

bool realized(const ClassPair& p, const OrderedStructure& m, const std::vector<Elem>& f) {
  std::vector<Elem> fixed(static_cast<std::size_t>(p.b.size()), -1);
  for (int x = 0; x < p.a.size(); ++x) fixed[static_cast<std::size_t>(p.inclusion(x))] = f[static_cast<std::size_t>(x)];
  bool found = false;
  for_each_embedding(p.b, m, fixed, [&](const Embedding&) { return !(found = true); });
  return found;
}

// Tasks against `m` whose image meets `fresh` (all elements when empty).
void enqueue(const std::vector<ClassPair>& pairs, const OrderedStructure& m, int stage,
             const std::vector<std::uint8_t>& fresh, std::vector<FraisseTask>& out) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& a = pairs[i].a;
    if (a.size() == 0) {
      if (stage == 0) out.push_back({static_cast<int>(i), stage, {}});
      continue;
    }
    for_each_embedding(a, m, {}, [&](const Embedding& e) {
      const bool touches = fresh.empty() || std::any_of(e.map.begin(), e.map.end(), [&](Elem y) { return fresh[static_cast<std::size_t>(y)] != 0; });
      if (touches) out.push_back({static_cast<int>(i), stage, e.map});
      return true;
    });
  }
}

std::string fresh_name(const OrderedStructure& m, int& counter) {
  std::string n;
  do {
    n = "e" + std::to_string(++counter);
  } while (m.index_of(n));
  return n;
}

}  // namespace

FraisseChain build_chain(const ClassSpec& spec, int steps, int pair_size_cap) {
  check_spec(spec);
  FraisseChain chain;
  chain.pairs = class_pairs(spec, pair_size_cap);
  OrderedStructure m = spec.root ? *spec.root : empty_member(spec);
  chain.stages.push_back(m);
  std::vector<FraisseTask> queue;
  enqueue(chain.pairs, m, 0, {}, queue);
  int counter = 0;
  for (int round = 1; round <= steps; ++round) {
    const int prev_size = m.size();
    Embedding total;  // stage round-1 → current m
    for (int x = 0; x < prev_size; ++x) total.map.push_back(x);
    std::size_t done = 0, grown = 0;
    for (const auto& task : queue) {
      const ClassPair& p = chain.pairs[static_cast<std::size_t>(task.pair)];
      std::vector<Elem> f;
      for (Elem x : task.map) f.push_back(total(x));
      ++done;
      if (realized(p, m, f)) continue;
      ++grown;
      OrderedStructure b = p.b;
      std::vector<std::uint8_t> in_a(static_cast<std::size_t>(b.size()), 0);
      for (int x = 0; x < p.a.size(); ++x) {
        in_a[static_cast<std::size_t>(p.inclusion(x))] = 1;
        b.names[static_cast<std::size_t>(p.inclusion(x))] = m.names[static_cast<std::size_t>(f[static_cast<std::size_t>(x)])];
      }
      for (int y = 0; y < b.size(); ++y)
        if (!in_a[static_cast<std::size_t>(y)]) b.names[static_cast<std::size_t>(y)] = fresh_name(m, counter);
      std::vector<Elem> image = f;
      std::sort(image.begin(), image.end());
      OrderedStructure c = image.empty() ? empty_member(spec) : restrict_to(m, image).structure;
      if (image.empty()) c.kind = m.kind;
      auto r = amalgamate_expanded({m, b, c}, {.prefer_union = true});
      for (auto& x : total.map) x = r.embed_a(x);
      m = std::move(r.d);
    }
    auto report = validate(m);
    if (!report.ok()) throw Error("stage " + std::to_string(round) + " is not a class member: " + report.violations.front().what);
    chain.realized.push_back(done);
    chain.amalgamated.push_back(grown);
    chain.inclusions.push_back(total);
    chain.stages.push_back(m);
    std::vector<std::uint8_t> fresh(static_cast<std::size_t>(m.size()), 1);
    for (Elem x : total.map) fresh[static_cast<std::size_t>(x)] = 0;
    queue.clear();
    enqueue(chain.pairs, m, round, fresh, queue);
  }
  chain.residual = std::move(queue);
  return chain;
}

ExtensionReport check_extension_property(const OrderedStructure& m, const ClassSpec& spec, int pair_size_cap,
                                         const std::optional<std::vector<Elem>>& within) {
  ExtensionReport report;
  std::vector<std::uint8_t> allowed(static_cast<std::size_t>(m.size()), within ? 0 : 1);
  if (within)
    for (Elem x : *within) allowed[static_cast<std::size_t>(x)] = 1;
  const auto pairs = class_pairs(spec, pair_size_cap);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    for_each_embedding(p.a, m, {}, [&](const Embedding& e) {
      if (!std::all_of(e.map.begin(), e.map.end(), [&](Elem y) { return allowed[static_cast<std::size_t>(y)] != 0; }))
        return true;
      if (!realized(p, m, e.map)) report.missing.push_back({static_cast<int>(i), 0, e.map});
      return true;
    });
  }
  report.ok = report.missing.empty();
  return report;
}

}  // namespace supamal
