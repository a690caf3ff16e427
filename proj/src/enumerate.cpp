#include "supamal/enumerate.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "supamal/canonical.hpp"

namespace supamal {

namespace {

std::mutex cache_mutex;

std::vector<OrderedStructure> sorted_unique(std::map<std::string, OrderedStructure>&& by_sig) {
  std::vector<OrderedStructure> out;
  out.reserve(by_sig.size());
  for (auto& [sig, s] : by_sig) out.push_back(std::move(s));
  return out;
}

// Down-closed subsets of a poset, as element lists.
std::vector<std::vector<Elem>> down_sets(const FinitePoset& p) {
  const int n = p.size();
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> cur;
  std::vector<std::uint8_t> in(static_cast<std::size_t>(n), 0);
  // Decide elements in a linear extension order so closure is checked locally.
  std::vector<Elem> lin(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) lin[static_cast<std::size_t>(i)] = i;
  std::sort(lin.begin(), lin.end(), [&](Elem a, Elem b) {
    int da = 0, db = 0;
    for (int o = 0; o < n; ++o) {
      da += p.leq(o, a);
      db += p.leq(o, b);
    }
    return da != db ? da < db : a < b;
  });
  auto rec = [&](auto&& self, int k) -> void {
    if (k == n) {
      out.push_back(cur);
      return;
    }
    const Elem x = lin[static_cast<std::size_t>(k)];
    self(self, k + 1);
    bool ok = true;
    for (int o = 0; o < n && ok; ++o)
      if (o != x && p.leq(o, x) && !in[static_cast<std::size_t>(o)]) ok = false;
    if (ok) {
      in[static_cast<std::size_t>(x)] = 1;
      cur.push_back(x);
      self(self, k + 1);
      cur.pop_back();
      in[static_cast<std::size_t>(x)] = 0;
    }
  };
  rec(rec, 0);
  return out;
}

const std::vector<OrderedStructure>& posets(int size, std::map<std::pair<int, int>, std::vector<OrderedStructure>>& cache);

std::vector<OrderedStructure> grow_posets(int size, std::map<std::pair<int, int>, std::vector<OrderedStructure>>& cache) {
  std::map<std::string, OrderedStructure> by_sig;
  if (size == 0) {
    by_sig.emplace("", build_structure(FinitePoset::antichain(0), StructureKind::poset));
    return sorted_unique(std::move(by_sig));
  }
  for (const auto& smaller : posets(size - 1, cache)) {
    const FinitePoset& p = smaller.poset;
    for (const auto& d : down_sets(p)) {
      std::vector<std::uint8_t> m(static_cast<std::size_t>(size * size), 0);
      for (int a = 0; a < size - 1; ++a)
        for (int b = 0; b < size - 1; ++b) m[static_cast<std::size_t>(a * size + b)] = p.leq(a, b);
      for (Elem x : d) m[static_cast<std::size_t>(x * size + size - 1)] = 1;
      m[static_cast<std::size_t>(size * size - 1)] = 1;
      auto s = build_structure(FinitePoset::unchecked(size, std::move(m)), StructureKind::poset);
      auto f = canonical_form(s);
      if (by_sig.count(f.signature)) continue;
      by_sig.emplace(f.signature, permute(s, f.labeling));
    }
  }
  return sorted_unique(std::move(by_sig));
}

const std::vector<OrderedStructure>& posets(int size, std::map<std::pair<int, int>, std::vector<OrderedStructure>>& cache) {
  const auto key = std::make_pair(static_cast<int>(StructureKind::poset), size);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto list = grow_posets(size, cache);
  return cache.emplace(key, std::move(list)).first->second;
}

}  // namespace

const std::vector<OrderedStructure>& enumerate_structures(StructureKind kind, int size) {
  static std::map<std::pair<int, int>, std::vector<OrderedStructure>> cache;
  if (size < 0) throw InputError("size must be non-negative");
  std::lock_guard<std::mutex> lock(cache_mutex);
  const auto key = std::make_pair(static_cast<int>(kind), size);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  std::vector<OrderedStructure> out;
  if (kind == StructureKind::boolean_algebra) {
    if (size > 0 && (size & (size - 1)) == 0) {
      int atoms = 0;
      while ((1 << atoms) < size) ++atoms;
      out.push_back(canonical_structure(boolean_algebra(atoms)));
    }
  } else {
    if (size > kEnumerationCap)
      throw BoundExceeded("enumeration is limited to " + std::to_string(kEnumerationCap) + " elements");
    if (kind == StructureKind::poset) return posets(size, cache);
    if (!(has_constants(kind) && size == 0)) {
      std::map<std::string, OrderedStructure> by_sig;
      for (const auto& p : posets(size, cache)) {
        if (!implies(strongest_kind(p.poset), kind)) continue;
        auto s = build_structure(p.poset, kind);
        auto f = canonical_form(s);
        by_sig.emplace(f.signature, permute(s, f.labeling));
      }
      out = sorted_unique(std::move(by_sig));
    }
  }
  return cache.emplace(key, std::move(out)).first->second;
}

}  // namespace supamal
