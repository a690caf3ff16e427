#include "supamal/completion.hpp"

#include <algorithm>
#include <set>

namespace supamal {

namespace {

using Cut = std::vector<std::uint8_t>;

std::string fresh_name(const std::set<std::string>& used, int& counter) {
  for (;;) {
    std::string name = "#" + std::to_string(++counter);
    if (!used.count(name)) return name;
  }
}

}  // namespace

Completion macneille_completion(const OrderedStructure& s) {
  const FinitePoset& p = s.poset;
  const int n = p.size();
  std::vector<Cut> principal(static_cast<std::size_t>(n), Cut(static_cast<std::size_t>(n), 0));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) principal[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = p.leq(y, x);

  // Intersections of principal down-sets, plus the whole carrier.
  std::set<Cut> cuts(principal.begin(), principal.end());
  cuts.insert(Cut(static_cast<std::size_t>(n), 1));
  std::vector<Cut> frontier(cuts.begin(), cuts.end());
  while (!frontier.empty()) {
    std::vector<Cut> next;
    for (const Cut& c : frontier)
      for (const Cut& d : principal) {
        Cut m(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)] & d[static_cast<std::size_t>(i)];
        if (cuts.insert(m).second) next.push_back(std::move(m));
      }
    frontier = std::move(next);
  }

  std::vector<Cut> extra;
  const std::set<Cut> principal_set(principal.begin(), principal.end());
  for (const Cut& c : cuts)
    if (!principal_set.count(c)) extra.push_back(c);
  std::sort(extra.begin(), extra.end(), [](const Cut& a, const Cut& b) {
    const auto ca = std::count(a.begin(), a.end(), 1), cb = std::count(b.begin(), b.end(), 1);
    if (ca != cb) return ca < cb;
    return a > b;
  });

  std::vector<Cut> all = principal;
  all.insert(all.end(), extra.begin(), extra.end());
  const int m = static_cast<int>(all.size());
  std::vector<std::uint8_t> leq(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      bool sub = true;
      for (int i = 0; i < n && sub; ++i)
        sub = !all[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] || all[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)];
      leq[static_cast<std::size_t>(a * m + b)] = sub;
    }

  std::vector<std::string> names = s.names;
  names.resize(static_cast<std::size_t>(n));
  std::set<std::string> used(names.begin(), names.end());
  int counter = 0;
  for (std::size_t i = 0; i < extra.size(); ++i) {
    names.push_back(fresh_name(used, counter));
    used.insert(names.back());
  }
  Completion c;
  c.lattice = build_structure(FinitePoset::unchecked(m, std::move(leq)), StructureKind::bounded_lattice, std::move(names));
  c.embedding.map.resize(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) c.embedding.map[static_cast<std::size_t>(x)] = x;
  return c;
}

Completion macneille_completion(const FinitePoset& p) {
  return macneille_completion(build_structure(p, StructureKind::poset));
}

std::vector<Elem> join_irreducibles(const OrderedStructure& d) {
  std::vector<Elem> out;
  for (int x = 0; x < d.size(); ++x)
    if (d.poset.lower_covers(x).size() == 1) out.push_back(x);
  return out;
}

Completion birkhoff_embedding(const OrderedStructure& d) {
  if (d.size() == 0) throw PreconditionError("the empty structure is not a bounded distributive lattice");
  const OrderedStructure dl = build_structure(d.poset, StructureKind::distributive_lattice, d.names);
  auto report = validate(dl);
  if (!report.ok()) throw PreconditionError("not a distributive lattice: " + report.violations.front().what,
                                            report.violations.front().witnesses);
  const auto irr = join_irreducibles(dl);
  std::vector<std::string> atom_names;
  for (Elem j : irr) atom_names.push_back(dl.names[static_cast<std::size_t>(j)]);
  Completion c;
  c.lattice = boolean_algebra(atom_names);
  for (int x = 0; x < dl.size(); ++x) {
    unsigned mask = 0;
    for (std::size_t i = 0; i < irr.size(); ++i)
      if (dl.leq(irr[i], x)) mask |= 1u << i;
    c.embedding.map.push_back(static_cast<Elem>(mask));
  }
  return c;
}

}  // namespace supamal
