#include "doctest.h"
#include "helpers.hpp"
#include "supamal/amalgam.hpp"
#include "supamal/extension.hpp"

using namespace supamal;
using testkit::named;

TEST_CASE("two lower-bounded chains stay incomparable") {
  auto a = named(StructureKind::poset, {"c", "a"}, {{"c", "a"}});
  auto b = named(StructureKind::poset, {"c", "b"}, {{"c", "b"}});
  auto c = named(StructureKind::poset, {"c"}, {});
  auto r = jonsson_poset_amalgam({a, b, c});
  REQUIRE(r.d.size() == 3);
  CHECK_FALSE(r.d.poset.comparable(r.d.element("a"), r.d.element("b")));
  CHECK(verify_superamalgam(r));
}

TEST_CASE("composition through the shared element yields an interpolant") {
  auto a = named(StructureKind::poset, {"a", "c"}, {{"a", "c"}});
  auto b = named(StructureKind::poset, {"c", "b"}, {{"c", "b"}});
  auto c = named(StructureKind::poset, {"c"}, {});
  auto r = jonsson_poset_amalgam({a, b, c});
  CHECK(r.d.leq(r.d.element("a"), r.d.element("b")));
  REQUIRE(r.interpolants.size() == 1);
  CHECK(r.d.names[static_cast<std::size_t>(r.interpolants[0].c)] == "c");
  CHECK(verify_superamalgam(r));
}

TEST_CASE("join-semilattice amalgam adds the missing join") {
  auto a = named(StructureKind::join_semilattice, {"c", "a"}, {{"c", "a"}});
  auto b = named(StructureKind::join_semilattice, {"c", "b"}, {{"c", "b"}});
  auto c = named(StructureKind::join_semilattice, {"c"}, {});
  auto r = amalgamate({a, b, c}, StructureKind::join_semilattice);
  CHECK(r.d.size() == 4);
  CHECK(r.completed);
  CHECK(validate(r.d).ok());
  CHECK(verify_superamalgam(r));
}

TEST_CASE("Boolean amalgam counts atom pairs") {
  auto two = boolean_algebra(std::vector<std::string>{"u"});
  auto four_a = boolean_algebra(std::vector<std::string>{"p", "q"});
  auto four_b = boolean_algebra(std::vector<std::string>{"r", "s"});
  auto eight = boolean_algebra(std::vector<std::string>{"r", "s", "t"});
  auto r = boolean_amalgam({four_a, four_b, two});
  CHECK(r.d.size() == 16);
  CHECK(verify_superamalgam(r));
  auto r2 = boolean_amalgam({four_a, eight, two});
  CHECK(r2.d.size() == 64);
  CHECK(verify_superamalgam(r2));
  auto r3 = boolean_amalgam({four_a, four_a, four_a});
  CHECK(r3.d.size() == 4);
}

TEST_CASE("expanded amalgam of posets with closure operations") {
  auto a = named(StructureKind::poset, {"c", "a"}, {{"c", "a"}});
  auto b = named(StructureKind::poset, {"c", "b"}, {{"c", "b"}});
  auto c = named(StructureKind::poset, {"c"}, {});
  const auto w = PropertySpec::unary(PropertyCase::B3);
  a.set_op({"K", w, {0, 1}});
  b.set_op({"K", w, {0, 1}});
  c.set_op({"K", w, {0}});
  auto r = amalgamate_expanded({a, b, c});
  CHECK(r.d.size() >= 3);
  CHECK(verify_superamalgam(r));
  CHECK(verify_property(r.d, w, r.d.op("K")->table));
}

TEST_CASE("union amalgam of transitive relations") {
  RelationalStructure a{{"c", "a"}, {1, 1, 0, 1}, {{"K", false, {0, 1}}}};
  RelationalStructure b{{"c", "b"}, {1, 0, 1, 1}, {{"K", false, {0, 1}}}};
  RelationalStructure c{{"c"}, {1}, {{"K", false, {0}}}};
  auto r = union_relational_amalgam(a, b, c);
  CHECK(r.d.size() == 3);
  CHECK(r.d.rel(2, 1));  // b R c R a
  CHECK(r.interpolants.size() == 1);
}
