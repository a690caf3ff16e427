// One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.
//   acceptance [--only N] [--seed S]

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>

#include "acceptance.hpp"
#include "supamal/completion.hpp"
#include "supamal/enumerate.hpp"

namespace acceptance {

using namespace supamal;

namespace {
unsigned g_seed = 20240611;
}

std::mt19937& rng() {
  static std::mt19937 gen(g_seed);
  return gen;
}

void set_seed(unsigned s) { g_seed = s; }

Result completions() {
  Tally tally;
  std::size_t posets = 0;
  for (int n = 0; n <= 5; ++n)
    for (const auto& p : enumerate_structures(StructureKind::poset, n)) {
      ++posets;
      const auto c = macneille_completion(p);
      const auto mp = matrix_of(p), ml = matrix_of(c.lattice);
      tally.check(oracle::is_partial_order(ml) && (ml.empty() || oracle::is_lattice(ml)),
                  "completion is not a lattice");
      bool embeds = true;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) embeds = embeds && mp[x][y] == ml[c.embedding(x)][c.embedding(y)];
      tally.check(embeds, "completion map is not an order embedding");
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> sub, img;
        for (int x = 0; x < n; ++x)
          if (mask >> x & 1) {
            sub.push_back(x);
            img.push_back(c.embedding(x));
          }
        if (auto m = oracle::glb(mp, sub))
          tally.check(oracle::glb(ml, img) == std::optional<int>(c.embedding(*m)), "an existing meet is lost");
        if (auto j = oracle::lub(mp, sub))
          tally.check(oracle::lub(ml, img) == std::optional<int>(c.embedding(*j)), "an existing join is lost");
      }
    }

  {
    const auto c = macneille_completion(FinitePoset::antichain(2));
    const auto m = matrix_of(c.lattice);
    tally.check(c.lattice.size() == 4 && oracle::is_lattice(m), "antichain of two does not complete to four");
  }

  std::size_t distributive = 0;
  for (int n = 1; n <= 6; ++n)
    for (const auto& d : enumerate_structures(StructureKind::distributive_lattice, n)) {
      ++distributive;
      const auto c = birkhoff_embedding(d);
      const auto md = matrix_of(d), mb = matrix_of(c.lattice);
      const int size = c.lattice.size();
      tally.check(size > 0 && (size & (size - 1)) == 0 && c.lattice.kind == StructureKind::boolean_algebra,
                  "target is not a powerset algebra");
      bool ok = true;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          if (x != y && c.embedding(x) == c.embedding(y)) ok = false;
          ok = ok && oracle::lub(mb, {c.embedding(x), c.embedding(y)}) == std::optional<int>(c.embedding(*oracle::lub(md, {x, y})));
          ok = ok && oracle::glb(mb, {c.embedding(x), c.embedding(y)}) == std::optional<int>(c.embedding(*oracle::glb(md, {x, y})));
        }
      ok = ok && oracle::lub(mb, {}) == std::optional<int>(c.embedding(*oracle::lub(md, {})));
      ok = ok && oracle::glb(mb, {}) == std::optional<int>(c.embedding(*oracle::glb(md, {})));
      tally.check(ok, "Birkhoff map is not a bounded-lattice embedding on " + std::to_string(n) + " elements");
    }
  return tally.result(std::to_string(posets) + " posets, " + std::to_string(distributive) +
                      " distributive lattices");
}

}  // namespace acceptance

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--only") && i + 1 < argc) only = std::atoi(argv[++i]);
    else if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) acceptance::set_seed(static_cast<unsigned>(std::strtoul(argv[++i], nullptr, 10)));
    else {
      std::cerr << "usage: acceptance [--only N] [--seed S]\n";
      return 2;
    }
  }
  using Fn = acceptance::Result (*)();
  const std::pair<const char*, Fn> criteria[] = {
      {"extension condition matches exhaustive search", acceptance::extension_condition},
      {"fixtures reproduce", acceptance::fixtures},
      {"superamalgamation of reducts", acceptance::superamalgamation},
      {"expanded amalgamation", acceptance::expanded_amalgamation},
      {"free algebra sizes and normal forms", acceptance::free_algebra_sizes},
      {"decision procedure against brute force", acceptance::decision_procedure},
      {"Fraisse chain stages", acceptance::fraisse_stages},
      {"completions", acceptance::completions},
  };
  int failed = 0;
  for (int i = 0; i < 8; ++i) {
    if (only && only != i + 1) continue;
    acceptance::Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("uncaught: ") + e.what()};
    }
    failed += !r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << r.detail
              << std::endl;
  }
  return failed ? 1 : 0;
}
