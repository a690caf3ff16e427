#include <algorithm>
#include <set>
#include <string>

#include "acceptance.hpp"
#include "supamal/extension.hpp"
#include "supamal/io.hpp"

namespace acceptance {

using namespace supamal;

namespace {

const PropertyCase kUnary[] = {PropertyCase::A1e, PropertyCase::A1c, PropertyCase::A2, PropertyCase::A2e,
                               PropertyCase::A2c, PropertyCase::A3,  PropertyCase::B1, PropertyCase::B1e,
                               PropertyCase::B1c, PropertyCase::B2,  PropertyCase::B3, PropertyCase::B4,
                               PropertyCase::B5};

OrderedStructure lattice_of(const oracle::Matrix& m) {
  const int n = static_cast<int>(m.size());
  std::vector<std::uint8_t> bytes;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) bytes.push_back(m[i][j] ? 1 : 0);
  return make_structure(FinitePoset::from_matrix(n, std::move(bytes)), StructureKind::lattice);
}

PartialOp partial_of(const oracle::Table& t) {
  PartialOp g;
  for (std::size_t x = 0; x < t.size(); ++x)
    if (t[x] >= 0) g.values[{static_cast<Elem>(x)}] = t[x];
  return g;
}

bool extends(const oracle::Table& partial, const std::vector<Elem>& k) {
  for (std::size_t x = 0; x < partial.size(); ++x)
    if (partial[x] >= 0 && k[x] != partial[x]) return false;
  return true;
}

std::string show(const oracle::Table& t) {
  std::string s;
  for (int v : t) s += (v < 0 ? std::string("_") : std::to_string(v)) + " ";
  return s;
}

oracle::Table table_of(const OrderedStructure& s, const std::string& op) {
  const Operation* o = s.op(op);
  return {o->table.begin(), o->table.end()};
}

oracle::Table partial_table(const OrderedStructure& s, const std::string& op) {
  oracle::Table t(static_cast<std::size_t>(s.size()), -1);
  for (const auto& [x, v] : s.partial_op(op)->op.values) t[static_cast<std::size_t>(x[0])] = v;
  return t;
}

std::string fixture(const char* name) { return std::string(FIXTURE_DIR) + "/" + name; }

}  // namespace

Result extension_condition() {
  Tally tally;
  std::size_t lattices = 0, extendable = 0;
  for (int n = 1; n <= 4; ++n) {
    for (const auto& m : oracle::lattices(n)) {
      ++lattices;
      const OrderedStructure host = lattice_of(m);
      oracle::Table partial(static_cast<std::size_t>(n), -1);
      // every partial table over {-1, 0..n-1}^n
      std::function<void(int)> rec = [&](int x) {
        if (x < n) {
          for (int v = -1; v < n; ++v) {
            partial[x] = v;
            rec(x + 1);
          }
          return;
        }
        const PartialOp g = partial_of(partial);
        for (PropertyCase c : kUnary) {
          const PropertySpec w = PropertySpec::unary(c);
          const std::string label = std::string(to_string(c)) + " on lattice " + std::to_string(lattices) +
                                    " (n=" + std::to_string(n) + ") G=" + show(partial);
          const bool truth = oracle::extension_exists(std::string(to_string(c)), m, partial);
          const bool nec = static_cast<bool>(check_necessary(w, host, g));
          tally.check(nec == truth, label + ": condition says " + (nec ? "yes" : "no"));
          tally.check(brute_force_extension_exists(w, host, g) == truth, label + ": library brute force disagrees");
          if (!nec) continue;
          ++extendable;
          for (bool extremal : {false, true}) {
            try {
              const auto k = extend(w, host, g, extremal);
              tally.check(extends(partial, k), label + ": output does not extend G");
              tally.check(static_cast<bool>(verify_property(host, w, k)), label + ": verify_property fails");
              tally.check(oracle::has_property(std::string(to_string(c)), m, oracle::Table(k.begin(), k.end())),
                          label + ": oracle property fails");
            } catch (const Error& e) {
              tally.fail(label + ": extend threw " + e.what());
            }
          }
        }
      };
      rec(0);
    }
  }
  return tally.result(std::to_string(lattices) + " lattices, " + std::to_string(tally.checks()) + " checks, " +
                      std::to_string(extendable) + " extendable instances");
}

Result fixtures() {
  Tally tally;
  const auto unary = [](PropertyCase c) { return PropertySpec::unary(c); };

  {  // iterate_idempotent refuses h with h(h(a)) above h(a)
    const auto s = load_structure(fixture("chain3_nonidempotent_h.json"));
    const auto h = s.op("H")->table;
    try {
      iterate_idempotent(s, h);
      tally.fail("iterate_idempotent accepted H");
    } catch (const PreconditionError& e) {
      tally.check(std::string(e.what()) == "h(h(a)) = c is not below h(a) = b",
                  std::string("unexpected message: ") + e.what());
    }
  }

  {  // idempotent extensions: the possible values at c
    const auto s = load_structure(fixture("diamond_bottom_idempotent.json"));
    const auto m = matrix_of(s);
    const auto partial = partial_table(s, "G");
    std::set<std::string> values, library_values;
    oracle::for_each_table(s.size(), partial, [&](const oracle::Table& k) {
      if (oracle::has_property("A2", m, k)) values.insert(s.names[k[s.element("c")]]);
    });
    enumerate_extensions(unary(PropertyCase::A2), s, s.partial_op("G")->op, [&](const std::vector<Elem>& k) {
      library_values.insert(s.names[k[s.element("c")]]);
      return true;
    });
    const std::set<std::string> expected{"0", "c", "a", "b"};
    tally.check(values == expected, "oracle K(c) values differ");
    tally.check(library_values == expected, "library K(c) values differ");
    tally.check(!values.count("1"), "K(c) = 1 admitted");
  }

  {  // no involution extension above both given involutions
    const auto s = load_structure(fixture("diamond_involutions.json"));
    const auto m = matrix_of(s);
    const auto ko = table_of(s, "Ko"), kb = table_of(s, "Kb");
    const auto partial = partial_table(s, "G");
    tally.check(oracle::involution(ko) && oracle::involution(kb), "fixture maps are not involutions");
    tally.check(extends(partial, {ko.begin(), ko.end()}) && extends(partial, {kb.begin(), kb.end()}),
                "fixture involutions do not extend G");
    std::size_t involutions = 0, above = 0;
    oracle::for_each_table(s.size(), partial, [&](const oracle::Table& k) {
      if (!oracle::involution(k)) return;
      ++involutions;
      bool up = true;
      for (int x = 0; x < s.size(); ++x) up = up && m[ko[x]][k[x]] && m[kb[x]][k[x]];
      if (up) ++above;
    });
    tally.check(involutions > 0 && above == 0, std::to_string(above) + " involutions above both");
  }

  {  // naive closure extensions are not comparable; the joint repair is
    const auto s = load_structure(fixture("chain_dpq_comparable.json"));
    const auto w = unary(PropertyCase::B3);
    const Elem p = s.element("p"), q = s.element("q");
    const auto ko = extend(w, s, s.partial_op("Ko")->op);
    const auto kb = extend(w, s, s.partial_op("Kb")->op);
    tally.check(ko[p] == q && kb[p] == p && !s.leq(ko[p], kb[p]), "naive extensions differ from expected");
    ComparabilitySpec spec{{"Ko", "Kb"},
                           FinitePoset::chain(2),
                           {s.partial_op("Ko")->op, s.partial_op("Kb")->op}};
    const auto family = extend_family(w, s, spec);
    const auto& fo = family.at("Ko");
    const auto& fb = family.at("Kb");
    const auto m = matrix_of(s);
    bool below = true;
    for (int x = 0; x < s.size(); ++x) below = below && s.leq(fo[x], fb[x]);
    tally.check(below, "repaired Ko is not below Kb");
    tally.check(fo[p] == p, "repaired Ko(p) is not p");
    tally.check(oracle::has_property("B3", m, {fo.begin(), fo.end()}) &&
                    oracle::has_property("B3", m, {fb.begin(), fb.end()}),
                "repaired family is not a pair of closures");
    tally.check(extends(partial_table(s, "Ko"), fo) && extends(partial_table(s, "Kb"), fb),
                "repaired family does not extend the partial maps");
  }

  {  // no comparable pair of involutions on the 4-chain
    const auto s = load_structure(fixture("chain4_involution_pair.json"));
    const auto m = matrix_of(s);
    const auto go = partial_table(s, "Go"), gb = partial_table(s, "Gb");
    const auto w = unary(PropertyCase::A3);
    tally.check(check_necessary(w, s, s.partial_op("Go")->op) && check_necessary(w, s, s.partial_op("Gb")->op),
                "each map alone should extend");
    std::vector<oracle::Table> lo, hi;
    oracle::for_each_table(s.size(), go, [&](const oracle::Table& k) {
      if (oracle::involution(k)) lo.push_back(k);
    });
    oracle::for_each_table(s.size(), gb, [&](const oracle::Table& k) {
      if (oracle::involution(k)) hi.push_back(k);
    });
    std::size_t comparable = 0;
    for (const auto& a : lo)
      for (const auto& b : hi) {
        bool le = true;
        for (int x = 0; x < s.size(); ++x) le = le && m[a[x]][b[x]];
        if (le) ++comparable;
      }
    tally.check(!lo.empty() && !hi.empty() && comparable == 0,
                std::to_string(comparable) + " comparable involution pairs");
    ComparabilitySpec spec{{"Go", "Gb"}, FinitePoset::chain(2), {s.partial_op("Go")->op, s.partial_op("Gb")->op}};
    bool threw = false;
    try {
      extend_family(w, s, spec);
    } catch (const PreconditionError&) {
      threw = true;
    }
    tally.check(threw, "extend_family produced a comparable involution pair");
  }
  return tally.result(std::to_string(tally.checks()) + " fixture checks");
}

}  // namespace acceptance
