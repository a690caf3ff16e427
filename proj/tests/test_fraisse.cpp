#include "doctest.h"
#include "supamal/extension.hpp"
#include "supamal/fraisse.hpp"

using namespace supamal;

namespace {
ClassSpec posets_with_closure() {
  return {StructureKind::poset, {{"K", PropertySpec::unary(PropertyCase::B3)}}, std::nullopt};
}
}  // namespace

TEST_CASE("age of posets with a closure operation") {
  auto spec = posets_with_closure();
  auto members = age(spec, 2);
  // empty, point, antichain, 2-chain with K = id, 2-chain with K constant top
  CHECK(members.size() == 5);
  for (const auto& m : members) CHECK(verify_property(m, m.op("K")->property, m.op("K")->table));
}

TEST_CASE("extension property on a point") {
  auto spec = posets_with_closure();
  OrderedStructure point = build_structure(FinitePoset::chain(1), StructureKind::poset, {"p"});
  point.set_op({"K", PropertySpec::unary(PropertyCase::B3), {0}});
  CHECK(check_extension_property(point, spec, 1).ok);
  auto r = check_extension_property(point, spec, 2);
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.missing.empty());
}

TEST_CASE("chain stages realize earlier tasks") {
  auto spec = posets_with_closure();
  auto zero = build_chain(spec, 0, 2);
  CHECK(zero.stages.size() == 1);
  CHECK(zero.stages[0].size() == 0);
  auto chain = build_chain(spec, 2, 2);
  REQUIRE(chain.stages.size() == 3);
  const auto& last = chain.stages.back();
  for (const auto& s : chain.stages) CHECK(validate(s).ok());
  for (std::size_t i = 0; i + 1 < chain.stages.size(); ++i)
    CHECK(check_embedding(chain.stages[i], chain.stages[i + 1], chain.inclusions[i]));
  CHECK(check_extension_property(last, spec, 2, chain.inclusions.back().map).ok);
  MESSAGE("stage sizes " << chain.stages[1].size() << " " << last.size() << ", residual " << chain.residual.size());
}

TEST_CASE("join-semilattice stage one embeds every point") {
  ClassSpec spec{StructureKind::join_semilattice, {{"K", PropertySpec::unary(PropertyCase::B3)}}, std::nullopt};
  auto chain = build_chain(spec, 1, 1);
  CHECK(chain.stages[1].size() >= 1);
  CHECK(check_extension_property(chain.stages[1], spec, 1).ok);
}
