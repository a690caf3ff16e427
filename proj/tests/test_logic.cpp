#include "doctest.h"
#include "supamal/extension.hpp"
#include "supamal/logic.hpp"

using namespace supamal;

namespace {
TheoryProfile profile(StructureKind kind, std::initializer_list<const char*> ops) {
  TheoryProfile p;
  p.kind = kind;
  for (const char* o : ops) p.add_op(o);
  return p;
}
}  // namespace

TEST_CASE("parsing") {
  auto p = profile(StructureKind::join_semilattice, {"K:B3"});
  auto s = parse_sentence("forall x . x <= K(x)", p);
  CHECK(s.vars == std::vector<std::string>{"x"});
  CHECK(s.matrix.kind == Formula::Kind::le);
  auto add = parse_sentence("forall x y . K(x) \\/ K(y) = K(x \\/ y)", p);
  CHECK(add.to_string() == "forall x y . K(x) \\/ K(y) = K(x \\/ y)");
  CHECK(parse_sentence(add.to_string(), p) == add);
  CHECK_THROWS_WITH_AS(parse_sentence("forall x . y <= x", p), "position 12: unbound variable y", InputError);
  CHECK_THROWS_AS(parse_sentence("forall x . x /\\ x = x", p), InputError);
  CHECK_THROWS_AS(parse_sentence("forall x . L(x) = x", p), InputError);
  CHECK_THROWS_AS(parse_sentence("forall x . K(x, x) = x", p), InputError);
  auto paren = parse_sentence("forall x y . (x \\/ y) <= K(y) -> (x <= y | !(x = y))", p);
  CHECK(paren.matrix.kind == Formula::Kind::implication);
}

TEST_CASE("flattening") {
  auto p = profile(StructureKind::poset, {"K:B3"});
  auto f = flatten(parse_sentence("forall x . x <= K(x)", p));
  CHECK(f.sentence.to_string() == "forall x y1 . K(x) = y1 -> x <= y1");
  auto g = flatten(parse_sentence("forall x . K(K(x)) = K(x)", p));
  CHECK(g.premises.size() == 2);
  auto h = flatten(parse_sentence("forall x y . x <= y", p));
  CHECK(h.premises.empty());
  CHECK(h.sentence.to_string() == "forall x y . x <= y");
}

TEST_CASE("decisions") {
  auto pos = profile(StructureKind::poset, {"K:B3"});
  auto v = decide_universal(pos, parse_sentence("forall x . x <= K(x)", pos));
  CHECK(v.verdict == Verdict3::valid);
  auto jsl = profile(StructureKind::join_semilattice, {"K:B3"});
  auto add = parse_sentence("forall x y . K(x) \\/ K(y) = K(x \\/ y)", jsl);
  auto d = decide_universal(jsl, add);
  REQUIRE(d.verdict == Verdict3::invalid);
  CHECK_FALSE(evaluate_formula(*d.countermodel, add, add.matrix, d.assignment));
  CHECK(brute_force_decide(jsl, add, 5).verdict == Verdict3::invalid);
  auto two = profile(StructureKind::poset, {"K1:B1", "K2:B1"});
  auto comm = parse_sentence("forall x . K1(K2(x)) = K2(K1(x))", two);
  CHECK(decide_universal(two, comm).verdict == Verdict3::invalid);
  CHECK(brute_force_decide(two, comm, 3).verdict == Verdict3::invalid);
  auto idem = parse_sentence("forall x . K(K(x)) = K(x)", pos);
  CHECK(decide_universal(pos, idem).verdict == Verdict3::valid);
  CHECK(brute_force_decide(pos, idem, 4).verdict == Verdict3::valid_up_to_bound);
}
