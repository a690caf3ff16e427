#include "supamal/extension.hpp"

#include <algorithm>
#include <cmath>

namespace supamal {

namespace {

struct Flags {
  bool ext = false, contr = false, idem = false, inv = false, iso = false, anti = false;
};

Flags flags_of(PropertyCase c) {
  Flags f;
  switch (c) {
    case PropertyCase::A1e: f.ext = true; break;
    case PropertyCase::A1c: f.contr = true; break;
    case PropertyCase::A2: f.idem = true; break;
    case PropertyCase::A2e: f.idem = f.ext = true; break;
    case PropertyCase::A2c: f.idem = f.contr = true; break;
    case PropertyCase::A3: f.inv = true; break;
    case PropertyCase::B1: f.iso = true; break;
    case PropertyCase::B1e: f.iso = f.ext = true; break;
    case PropertyCase::B1c: f.iso = f.contr = true; break;
    case PropertyCase::B2: f.iso = f.idem = true; break;
    case PropertyCase::B3: f.ext = f.iso = f.idem = true; break;
    case PropertyCase::B4: f.contr = f.iso = f.idem = true; break;
    case PropertyCase::B5: f.anti = true; break;
    case PropertyCase::C1:
    case PropertyCase::C2:
    case PropertyCase::C3: break;
  }
  return f;
}

std::string nm(const OrderedStructure& h, Elem e) {
  if (e >= 0 && static_cast<std::size_t>(e) < h.names.size()) return h.names[static_cast<std::size_t>(e)];
  return std::to_string(e);
}

std::string tuple_str(const OrderedStructure& h, const Tuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += nm(h, t[i]);
  }
  return s + ")";
}

std::string set_str(const OrderedStructure& h, const std::vector<Elem>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += nm(h, xs[i]);
  }
  return s + "}";
}

// Meets and joins of subsets, with the lattice tables as a fast path.
class Bounds {
 public:
  explicit Bounds(const OrderedStructure& h) : h_(h) {
    const std::size_t cells = static_cast<std::size_t>(h.size()) * static_cast<std::size_t>(h.size());
    meet_ok_ = h.meet_table.size() == cells && h.top && has_meet(h.kind);
    join_ok_ = h.join_table.size() == cells && h.bottom && has_join(h.kind);
  }

  Elem meet(std::vector<Elem> xs) const { return get(std::move(xs), Direction::meet); }
  Elem join(std::vector<Elem> xs) const { return get(std::move(xs), Direction::join); }

 private:
  Elem get(std::vector<Elem> xs, Direction d) const {
    const bool fast = d == Direction::meet ? meet_ok_ : join_ok_;
    if (fast) {
      if (xs.empty()) return d == Direction::meet ? *h_.top : *h_.bottom;
      Elem acc = xs[0];
      for (Elem x : xs) acc = d == Direction::meet ? h_.meet(acc, x) : h_.join(acc, x);
      return acc;
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    auto b = bound(h_.poset, xs, d);
    if (!b)
      throw PreconditionError("the subset " + set_str(h_, xs) + " of the range has no " +
                                  (d == Direction::meet ? "meet" : "join") +
                                  " in the host; complete the host first (macneille)",
                              xs);
    return *b;
  }

  const OrderedStructure& h_;
  bool meet_ok_ = false;
  bool join_ok_ = false;
};

bool lattice_host(const OrderedStructure& h) {
  const std::size_t cells = static_cast<std::size_t>(h.size()) * static_cast<std::size_t>(h.size());
  if (h.join_table.size() != cells || h.meet_table.size() != cells) return false;
  return std::all_of(h.join_table.begin(), h.join_table.end(), [](Elem e) { return e >= 0; }) &&
         std::all_of(h.meet_table.begin(), h.meet_table.end(), [](Elem e) { return e >= 0; });
}

Elem eval_term(const OrderedStructure& h, const LatticeTerm& t, const Tuple& args) {
  return t.evaluate(args, [&](Elem a, Elem b) { return h.join(a, b); }, [&](Elem a, Elem b) { return h.meet(a, b); });
}

// a ⊑ b in the C1 pattern: isotone prefix, equal middle, antitone suffix.
bool pattern_leq(const OrderedStructure& h, const PropertySpec& w, const Tuple& a, const Tuple& b) {
  const int n = w.arity;
  for (int k = 0; k < n; ++k) {
    const auto u = static_cast<std::size_t>(k);
    if (k < w.isotone) {
      if (!h.leq(a[u], b[u])) return false;
    } else if (k >= n - w.antitone) {
      if (!h.leq(b[u], a[u])) return false;
    } else if (a[u] != b[u]) {
      return false;
    }
  }
  return true;
}

Tuple prefix(const Tuple& t, int i) { return Tuple(t.begin(), t.begin() + i); }

void require_c3_host(const OrderedStructure& h, const PropertySpec& w) {
  if (w.kind == PropertyCase::C3 && !lattice_host(h))
    throw PreconditionError("C3 needs a lattice host to evaluate its term");
}

Verdict check_unary(const PropertySpec& w, const OrderedStructure& h, const std::vector<Elem>& g) {
  const int n = h.size();
  std::vector<Elem> dom;
  for (int x = 0; x < n; ++x)
    if (g[static_cast<std::size_t>(x)] >= 0) dom.push_back(x);
  auto G = [&](Elem x) { return g[static_cast<std::size_t>(x)]; };
  auto in_d = [&](Elem x) { return G(x) >= 0; };
  const PropertyCase c = w.kind;
  const Flags f = flags_of(c);
  using PC = PropertyCase;

  if (f.ext)
    for (Elem a : dom)
      if (!h.leq(a, G(a))) return Verdict::fail("not extensive at " + nm(h, a), {a});
  if (f.contr)
    for (Elem a : dom)
      if (!h.leq(G(a), a)) return Verdict::fail("not contractive at " + nm(h, a), {a});
  if (c == PC::A2 || c == PC::A2e || c == PC::A2c)
    for (Elem a : dom)
      if (in_d(G(a)) && G(G(a)) != G(a))
        return Verdict::fail("G(G(" + nm(h, a) + ")) differs from G(" + nm(h, a) + ")", {a});
  if (c == PC::A3) {
    for (Elem a : dom)
      if (in_d(G(a)) && G(G(a)) != a) return Verdict::fail("G(G(" + nm(h, a) + ")) differs from " + nm(h, a), {a});
    for (Elem a : dom)
      for (Elem b : dom)
        if (a < b && G(a) == G(b))
          return Verdict::fail("G is not injective on " + nm(h, a) + ", " + nm(h, b), {a, b});
  }
  if (c == PC::B1 || c == PC::B1e || c == PC::B1c || c == PC::B2)
    for (Elem a : dom)
      for (Elem b : dom)
        if (h.leq(a, b) && !h.leq(G(a), G(b)))
          return Verdict::fail(nm(h, a) + " <= " + nm(h, b) + " but G is not isotone there", {a, b});
  if (c == PC::B2 || c == PC::B3)
    for (Elem a : dom)
      for (Elem b : dom)
        if (h.leq(a, G(b)) && !h.leq(G(a), G(b)))
          return Verdict::fail(nm(h, a) + " <= G(" + nm(h, b) + ") but G(" + nm(h, a) + ") is not", {a, b});
  if (c == PC::B2 || c == PC::B4)
    for (Elem a : dom)
      for (Elem b : dom)
        if (h.leq(G(a), b) && !h.leq(G(a), G(b)))
          return Verdict::fail("G(" + nm(h, a) + ") <= " + nm(h, b) + " but not <= G(" + nm(h, b) + ")", {a, b});
  if (c == PC::B5)
    for (Elem a : dom)
      for (Elem b : dom)
        if (h.leq(a, b) && !h.leq(G(b), G(a)))
          return Verdict::fail(nm(h, a) + " <= " + nm(h, b) + " but G is not antitone there", {a, b});
  return Verdict::pass();
}

Verdict check_c(const PropertySpec& w, const OrderedStructure& h, const PartialOp& g) {
  require_c3_host(h, w);
  for (const auto& [a, va] : g.values)
    for (const auto& [b, vb] : g.values)
      if (pattern_leq(h, w, a, b) && !h.leq(va, vb)) {
        Tuple wit = a;
        wit.insert(wit.end(), b.begin(), b.end());
        return Verdict::fail("monotonicity pattern fails between " + tuple_str(h, a) + " and " + tuple_str(h, b), wit);
      }
  for (const auto& [a, va] : g.values) {
    if (w.kind == PropertyCase::C2)
      for (int k : w.bounded)
        if (!h.leq(a[static_cast<std::size_t>(k)], va))
          return Verdict::fail("x" + std::to_string(k + 1) + " is not below the value at " + tuple_str(h, a), a);
    if (w.kind == PropertyCase::C3 && !h.leq(eval_term(h, *w.term, prefix(a, w.isotone)), va))
      return Verdict::fail("term bound fails at " + tuple_str(h, a), a);
  }
  return Verdict::pass();
}

void check_arity(const PropertySpec& w, const PartialOp& g, int n) {
  if (g.arity != w.arity)
    throw InputError("partial operation has arity " + std::to_string(g.arity) + " but " + w.to_string() +
                     " needs " + std::to_string(w.arity));
  for (const auto& [t, v] : g.values) {
    bool ok = static_cast<int>(t.size()) == g.arity && v >= 0 && v < n;
    for (Elem e : t) ok = ok && e >= 0 && e < n;
    if (!ok) throw InputError("partial operation has an entry off the carrier", t);
  }
}

void require_isotone(const OrderedStructure& h, std::span<const Elem> k, const std::string& what) {
  const int n = h.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (h.leq(a, b) && !h.leq(k[static_cast<std::size_t>(a)], k[static_cast<std::size_t>(b)]))
        throw PreconditionError(what + " is not isotone: " + nm(h, a) + " <= " + nm(h, b), {a, b});
}

std::vector<Elem> orbit_fixpoints(std::span<const Elem> h) {
  std::vector<Elem> k(h.size());
  for (std::size_t x = 0; x < h.size(); ++x) {
    Elem y = h[x];
    // hh ≤ h makes the orbit decreasing, so it stops within |P| steps.
    for (std::size_t guard = 0; h[static_cast<std::size_t>(y)] != y && guard <= h.size(); ++guard)
      y = h[static_cast<std::size_t>(y)];
    k[x] = y;
  }
  return k;
}

void post_verify(const PropertySpec& w, const OrderedStructure& h, const PartialOp& g, const std::vector<Elem>& k) {
  const int n = h.size();
  for (const auto& [t, v] : g.values)
    if (k[tuple_index(t, n)] != v) throw Error("constructed operation does not extend the partial one", t);
  auto v = verify_property(h, w, k);
  if (!v) throw Error("constructed operation fails " + w.to_string() + ": " + v.reason, v.witnesses);
}

}  // namespace

std::vector<Elem> dense_table(const PartialOp& g, int n) {
  std::vector<Elem> t(ipow(static_cast<std::size_t>(n), g.arity), -1);
  for (const auto& [tu, v] : g.values) t[tuple_index(tu, n)] = v;
  return t;
}

PartialOp unary_partial(std::initializer_list<std::pair<Elem, Elem>> values) {
  PartialOp p;
  p.arity = 1;
  for (auto [a, b] : values) p.values[{a}] = b;
  return p;
}

PartialOp partial_from_table(std::span<const Elem> table, int n, int arity) {
  PartialOp p;
  p.arity = arity;
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i] >= 0) p.values[tuple_at(i, n, arity)] = table[i];
  return p;
}

Verdict verify_property(const OrderedStructure& h, const PropertySpec& w, std::span<const Elem> k) {
  const int n = h.size();
  if (k.size() != ipow(static_cast<std::size_t>(n), w.arity)) return Verdict::fail("table is not total");
  if (!is_c_case(w.kind)) {
    const Flags f = flags_of(w.kind);
    auto K = [&](Elem x) { return k[static_cast<std::size_t>(x)]; };
    for (int x = 0; x < n; ++x) {
      if (f.ext && !h.leq(x, K(x))) return Verdict::fail("not extensive at " + nm(h, x), {x});
      if (f.contr && !h.leq(K(x), x)) return Verdict::fail("not contractive at " + nm(h, x), {x});
      if (f.idem && K(K(x)) != K(x)) return Verdict::fail("not idempotent at " + nm(h, x), {x});
      if (f.inv && K(K(x)) != x) return Verdict::fail("not an involution at " + nm(h, x), {x});
    }
    if (f.iso || f.anti)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          if (!h.leq(a, b)) continue;
          if (f.iso && !h.leq(K(a), K(b))) return Verdict::fail("not isotone at " + nm(h, a) + " <= " + nm(h, b), {a, b});
          if (f.anti && !h.leq(K(b), K(a))) return Verdict::fail("not antitone at " + nm(h, a) + " <= " + nm(h, b), {a, b});
        }
    return Verdict::pass();
  }
  require_c3_host(h, w);
  const std::size_t cells = k.size();
  // Monotonicity along covers in one position at a time implies the full pattern.
  const auto covers = h.poset.all_upper_covers();
  for (std::size_t i = 0; i < cells; ++i) {
    const Tuple x = tuple_at(i, n, w.arity);
    const Elem fx = k[i];
    for (int pos = 0; pos < w.arity; ++pos) {
      const bool iso = pos < w.isotone;
      const bool anti = pos >= w.arity - w.antitone;
      if (!iso && !anti) continue;
      Tuple y = x;
      for (Elem v : covers[static_cast<std::size_t>(x[static_cast<std::size_t>(pos)])]) {
        y[static_cast<std::size_t>(pos)] = v;
        const Elem fy = k[tuple_index(y, n)];
        if (iso && !h.leq(fx, fy)) return Verdict::fail("not isotone in position " + std::to_string(pos + 1) + " at " + tuple_str(h, x), x);
        if (anti && !h.leq(fy, fx)) return Verdict::fail("not antitone in position " + std::to_string(pos + 1) + " at " + tuple_str(h, x), x);
      }
    }
    if (w.kind == PropertyCase::C2)
      for (int b : w.bounded)
        if (!h.leq(x[static_cast<std::size_t>(b)], fx))
          return Verdict::fail("x" + std::to_string(b + 1) + " not below the value at " + tuple_str(h, x), x);
    if (w.kind == PropertyCase::C3 && !h.leq(eval_term(h, *w.term, prefix(x, w.isotone)), fx))
      return Verdict::fail("term bound fails at " + tuple_str(h, x), x);
  }
  return Verdict::pass();
}

Verdict check_necessary(const PropertySpec& w, const OrderedStructure& host, const PartialOp& g) {
  w.check();
  check_arity(w, g, host.size());
  if (is_c_case(w.kind)) return check_c(w, host, g);
  return check_unary(w, host, dense_table(g, host.size()));
}

std::vector<Elem> iterate_idempotent(const OrderedStructure& host, std::span<const Elem> h) {
  const int n = host.size();
  if (h.size() != static_cast<std::size_t>(n)) throw InputError("operation table has the wrong size");
  require_isotone(host, h, "h");
  for (int x = 0; x < n; ++x) {
    const Elem hx = h[static_cast<std::size_t>(x)];
    const Elem hhx = h[static_cast<std::size_t>(hx)];
    if (!host.leq(hhx, hx))
      throw PreconditionError("h(h(" + nm(host, x) + ")) = " + nm(host, hhx) + " is not below h(" + nm(host, x) +
                                  ") = " + nm(host, hx),
                              {x});
  }
  return orbit_fixpoints(h);
}

std::vector<Elem> meet_idempotent_family(const OrderedStructure& host, const std::vector<std::vector<Elem>>& ks) {
  const int n = host.size();
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i].size() != static_cast<std::size_t>(n)) throw InputError("operation table has the wrong size");
    require_isotone(host, ks[i], "K" + std::to_string(i + 1));
    for (int x = 0; x < n; ++x) {
      const Elem kx = ks[i][static_cast<std::size_t>(x)];
      if (ks[i][static_cast<std::size_t>(kx)] != kx)
        throw PreconditionError("K" + std::to_string(i + 1) + " is not idempotent at " + nm(host, x), {x});
    }
  }
  Bounds b(host);
  std::vector<Elem> h(static_cast<std::size_t>(n));
  std::vector<Elem> vals;
  for (int x = 0; x < n; ++x) {
    vals.clear();
    for (const auto& k : ks) vals.push_back(k[static_cast<std::size_t>(x)]);
    h[static_cast<std::size_t>(x)] = b.meet(vals);
  }
  return iterate_idempotent(host, h);
}

std::vector<Elem> extend(const PropertySpec& w, const OrderedStructure& host, const PartialOp& g, bool extremal) {
  auto verdict = check_necessary(w, host, g);
  if (!verdict)
    throw PreconditionError("no " + w.to_string() + " extension exists: " + verdict.reason, verdict.witnesses);
  const int n = host.size();
  Bounds bounds(host);
  std::vector<Elem> k;
  using PC = PropertyCase;

  if (is_c_case(w.kind)) {
    k.assign(ipow(static_cast<std::size_t>(n), w.arity), -1);
    std::vector<Elem> vals;
    for (std::size_t i = 0; i < k.size(); ++i) {
      const Tuple x = tuple_at(i, n, w.arity);
      vals.clear();
      for (const auto& [b, v] : g.values)
        if (pattern_leq(host, w, x, b)) vals.push_back(v);
      k[i] = bounds.meet(vals);
    }
    post_verify(w, host, g, k);
    return k;
  }

  const std::vector<Elem> gd = dense_table(g, n);
  auto G = [&](Elem x) { return gd[static_cast<std::size_t>(x)]; };
  std::vector<Elem> dom;
  for (int x = 0; x < n; ++x)
    if (G(x) >= 0) dom.push_back(x);
  k.assign(static_cast<std::size_t>(n), -1);
  std::vector<Elem> vals;

  // Meet (or join) over {Gb : b ∈ D, pick(x, b)} for every x.
  auto fold = [&](auto pick, bool meet) {
    for (int x = 0; x < n; ++x) {
      vals.clear();
      for (Elem b : dom)
        if (pick(x, b)) vals.push_back(G(b));
      k[static_cast<std::size_t>(x)] = meet ? bounds.meet(vals) : bounds.join(vals);
    }
  };

  switch (w.kind) {
    case PC::A1e:
    case PC::A1c:
    case PC::A2:
    case PC::A2e:
    case PC::A2c: {
      const bool largest = extremal && (w.kind == PC::A1e || w.kind == PC::A2e);
      if (largest && !host.top) throw PreconditionError("the largest extension needs a top element");
      std::vector<std::uint8_t> image(static_cast<std::size_t>(n), 0);
      for (Elem b : dom) image[static_cast<std::size_t>(G(b))] = 1;
      for (int x = 0; x < n; ++x) {
        Elem v = x;
        if (G(x) >= 0) {
          v = G(x);
        } else if (largest) {
          v = (w.kind == PC::A2e && image[static_cast<std::size_t>(x)]) ? x : *host.top;
        }
        k[static_cast<std::size_t>(x)] = v;
      }
      break;
    }
    case PC::A3:
      for (int x = 0; x < n; ++x) k[static_cast<std::size_t>(x)] = x;
      for (Elem a : dom) k[static_cast<std::size_t>(G(a))] = a;
      for (Elem a : dom) k[static_cast<std::size_t>(a)] = G(a);
      break;
    case PC::B1:
    case PC::B1e:
      fold([&](Elem x, Elem b) { return host.leq(x, b); }, true);
      break;
    case PC::B1c:
      fold([&](Elem x, Elem b) { return host.leq(b, x); }, false);
      break;
    case PC::B2: {
      fold([&](Elem x, Elem b) { return host.leq(x, b) || host.leq(x, G(b)); }, true);
      k = iterate_idempotent(host, k);
      break;
    }
    case PC::B3:
      fold([&](Elem x, Elem b) { return host.leq(x, G(b)); }, true);
      break;
    case PC::B4:
      fold([&](Elem x, Elem b) { return host.leq(G(b), x); }, false);
      break;
    case PC::B5:
      fold([&](Elem x, Elem b) { return host.leq(b, x); }, true);
      break;
    default:
      break;
  }
  post_verify(w, host, g, k);
  return k;
}

std::map<std::string, std::vector<Elem>> extend_family(const PropertySpec& w, const OrderedStructure& host,
                                                       const ComparabilitySpec& spec) {
  const std::size_t z = spec.names.size();
  if (spec.ops.size() != z || spec.order.size() != static_cast<int>(z))
    throw InputError("comparability spec: names, order and operations disagree in size");
  const int n = host.size();
  for (std::size_t i = 0; i < z; ++i) {
    check_arity(w, spec.ops[i], n);
    if (i > 0) {
      bool same = spec.ops[i].values.size() == spec.ops[0].values.size();
      for (auto it = spec.ops[i].values.begin(), jt = spec.ops[0].values.begin(); same && it != spec.ops[i].values.end();
           ++it, ++jt)
        same = it->first == jt->first;
      if (!same) throw PreconditionError("operations " + spec.names[0] + " and " + spec.names[i] + " have different domains");
    }
    auto v = check_necessary(w, host, spec.ops[i]);
    if (!v) throw PreconditionError(spec.names[i] + " has no " + w.to_string() + " extension: " + v.reason, v.witnesses);
  }
  for (std::size_t a = 0; a < z; ++a)
    for (std::size_t b = 0; b < z; ++b) {
      if (a == b || !spec.order.leq(static_cast<Elem>(a), static_cast<Elem>(b))) continue;
      for (const auto& [t, va] : spec.ops[a].values)
        if (!host.leq(va, spec.ops[b].values.at(t)))
          throw PreconditionError(spec.names[a] + " <= " + spec.names[b] + " fails at " + tuple_str(host, t), t);
    }
  if (w.kind == PropertyCase::A3)
    for (std::size_t a = 0; a < z; ++a)
      for (const auto& [t, v] : spec.ops[a].values)
        if (!spec.ops[a].values.count({v}))
          throw PreconditionError(spec.names[a] + " maps " + nm(host, t[0]) + " outside the domain; comparable "
                                      "involutions need every value inside the domain",
                                  {t[0], v});

  std::vector<std::vector<Elem>> ks;
  for (std::size_t a = 0; a < z; ++a) ks.push_back(extend(w, host, spec.ops[a]));

  using PC = PropertyCase;
  if (w.kind == PC::B2 || w.kind == PC::B3 || w.kind == PC::B4) {
    Bounds bounds(host);
    std::vector<std::vector<Elem>> repaired;
    std::vector<Elem> vals;
    for (std::size_t a = 0; a < z; ++a) {
      std::vector<Elem> h(static_cast<std::size_t>(n));
      for (int x = 0; x < n; ++x) {
        vals.clear();
        for (std::size_t b = 0; b < z; ++b) {
          const bool take = w.kind == PC::B4 ? spec.order.leq(static_cast<Elem>(b), static_cast<Elem>(a))
                                             : spec.order.leq(static_cast<Elem>(a), static_cast<Elem>(b));
          if (take) vals.push_back(ks[b][static_cast<std::size_t>(x)]);
        }
        h[static_cast<std::size_t>(x)] = w.kind == PC::B4 ? bounds.join(vals) : bounds.meet(vals);
      }
      repaired.push_back(w.kind == PC::B2 ? iterate_idempotent(host, h) : std::move(h));
    }
    ks = std::move(repaired);
  }

  std::map<std::string, std::vector<Elem>> out;
  for (std::size_t a = 0; a < z; ++a) {
    post_verify(w, host, spec.ops[a], ks[a]);
    out[spec.names[a]] = ks[a];
  }
  for (std::size_t a = 0; a < z; ++a)
    for (std::size_t b = 0; b < z; ++b)
      if (spec.order.leq(static_cast<Elem>(a), static_cast<Elem>(b)))
        for (std::size_t i = 0; i < ks[a].size(); ++i)
          if (!host.leq(ks[a][i], ks[b][i]))
            throw Error("family extension lost comparability " + spec.names[a] + " <= " + spec.names[b],
                        tuple_at(i, n, w.arity));
  return out;
}

namespace {

// Constraints of `w` between cell `c` and every other assigned cell.
class LocalCheck {
 public:
  LocalCheck(const PropertySpec& w, const OrderedStructure& h) : w_(w), h_(h), f_(flags_of(w.kind)), n_(h.size()) {
    if (is_c_case(w.kind)) {
      require_c3_host(h, w);
      const std::size_t cells = ipow(static_cast<std::size_t>(n_), w.arity);
      for (std::size_t i = 0; i < cells; ++i) tuples_.push_back(tuple_at(i, n_, w.arity));
    }
  }

  bool ok(const std::vector<Elem>& t, std::size_t c) const {
    const Elem v = t[c];
    if (is_c_case(w_.kind)) {
      const Tuple& x = tuples_[c];
      if (w_.kind == PropertyCase::C2)
        for (int b : w_.bounded)
          if (!h_.leq(x[static_cast<std::size_t>(b)], v)) return false;
      if (w_.kind == PropertyCase::C3 && !h_.leq(eval_term(h_, *w_.term, prefix(x, w_.isotone)), v)) return false;
      for (std::size_t o = 0; o < t.size(); ++o) {
        if (o == c || t[o] < 0) continue;
        if (pattern_leq(h_, w_, x, tuples_[o]) && !h_.leq(v, t[o])) return false;
        if (pattern_leq(h_, w_, tuples_[o], x) && !h_.leq(t[o], v)) return false;
      }
      return true;
    }
    const Elem x = static_cast<Elem>(c);
    if (f_.ext && !h_.leq(x, v)) return false;
    if (f_.contr && !h_.leq(v, x)) return false;
    const Elem kv = t[static_cast<std::size_t>(v)];
    if (f_.idem && kv >= 0 && kv != v) return false;
    if (f_.inv && kv >= 0 && kv != x) return false;
    for (int z = 0; z < n_; ++z) {
      const Elem kz = t[static_cast<std::size_t>(z)];
      if (kz < 0 || z == x) continue;
      if (f_.idem && kz == x && v != x) return false;
      if (f_.inv && kz == x && v != z) return false;
      if (f_.iso && ((h_.leq(z, x) && !h_.leq(kz, v)) || (h_.leq(x, z) && !h_.leq(v, kz)))) return false;
      if (f_.anti && ((h_.leq(z, x) && !h_.leq(v, kz)) || (h_.leq(x, z) && !h_.leq(kz, v)))) return false;
    }
    return true;
  }

 private:
  const PropertySpec& w_;
  const OrderedStructure& h_;
  Flags f_;
  int n_;
  std::vector<Tuple> tuples_;
};

}  // namespace

void enumerate_extensions(const PropertySpec& w, const OrderedStructure& host, const PartialOp& g,
                          const std::function<bool(const std::vector<Elem>&)>& visit, double cap) {
  w.check();
  const int n = host.size();
  check_arity(w, g, n);
  const std::vector<Elem> fixed = dense_table(g, n);
  std::vector<std::size_t> order;
  std::size_t free_cells = 0;
  for (std::size_t i = 0; i < fixed.size(); ++i)
    if (fixed[i] >= 0) order.push_back(i);
  for (std::size_t i = 0; i < fixed.size(); ++i)
    if (fixed[i] < 0) {
      order.push_back(i);
      ++free_cells;
    }
  if (std::pow(static_cast<double>(n), static_cast<double>(free_cells)) > cap)
    throw BoundExceeded("extension search space " + std::to_string(n) + "^" + std::to_string(free_cells) +
                        " exceeds the cap");
  LocalCheck check(w, host);
  std::vector<Elem> t(fixed.size(), -1);
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (stop) return;
    if (depth == order.size()) {
      if (!visit(t)) stop = true;
      return;
    }
    const std::size_t c = order[depth];
    const Elem lo = fixed[c] >= 0 ? fixed[c] : 0;
    const Elem hi = fixed[c] >= 0 ? fixed[c] : n - 1;
    for (Elem v = lo; v <= hi && !stop; ++v) {
      t[c] = v;
      if (check.ok(t, c)) rec(depth + 1);
    }
    t[c] = -1;
  };
  if (n == 0) {
    if (fixed.empty() || w.arity == 0) visit(t);
    return;
  }
  rec(0);
}

bool brute_force_extension_exists(const PropertySpec& w, const OrderedStructure& host, const PartialOp& g, double cap) {
  bool found = false;
  enumerate_extensions(
      w, host, g,
      [&](const std::vector<Elem>&) {
        found = true;
        return false;
      },
      cap);
  return found;
}

}  // namespace supamal
