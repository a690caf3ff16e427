#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "supamal/structure.hpp"

namespace supamal {

struct Term {
  enum class Kind : std::uint8_t { var, zero, one, complement, join, meet, apply };
  Kind kind = Kind::var;
  int index = 0;  // variable index, or operation index into the signature
  std::vector<Term> args;

  static Term variable(int i) { return {Kind::var, i, {}}; }
  bool has_operations() const;
  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

struct Formula {
  enum class Kind : std::uint8_t { eq, le, negation, conjunction, disjunction, implication };
  Kind kind = Kind::eq;
  Term lhs, rhs;              // atoms
  std::vector<Formula> sub;  // connectives
  friend bool operator==(const Formula&, const Formula&) = default;
};

/// Base kind plus named added operations.
struct TheoryProfile {
  StructureKind kind = StructureKind::poset;
  std::vector<std::pair<std::string, PropertySpec>> ops;
  std::vector<Comparability> comparabilities;

  int op_index(std::string_view name) const;
  /// Parses `K:B3` or `T:C2:i=1,j=0,n=2,bounded=1`.
  void add_op(std::string_view decl);
};

/// ∀ vars . matrix; operation indices refer to `ops`.
struct Sentence {
  std::vector<std::string> vars;
  std::vector<std::string> ops;
  Formula matrix;

  std::string to_string() const;
  std::string term_string(const Term& t) const;
  friend bool operator==(const Sentence&, const Sentence&) = default;
};

/// Rejects unknown symbols, arity mismatches, connectives the kind lacks and
/// unbound variables; messages carry 1-based positions.
Sentence parse_sentence(std::string_view text, const TheoryProfile& profile);

struct EvalResult {
  bool holds = true;
  Tuple falsifying;  // first in lexicographic order
};

/// Exhaustive over assignments; throws InputError if `m` lacks a symbol.
EvalResult evaluate(const OrderedStructure& m, const Sentence& s);
Elem evaluate_term(const OrderedStructure& m, const Sentence& s, const Term& t, const Tuple& args);
bool evaluate_formula(const OrderedStructure& m, const Sentence& s, const Formula& f, const Tuple& args);

/// (⋀ op_i(args_i) = y_i) → psi with every args_i and psi free of added
/// operations. Repeated applications share one premise.
struct FlatSentence {
  struct Premise {
    int op;
    std::vector<Term> args;
    int var;
  };
  Sentence sentence;
  int original_vars = 0;
  std::vector<Premise> premises;
  Formula psi;
};

FlatSentence flatten(const Sentence& s);

/// Largest model generated by n elements, per base kind.
std::optional<std::size_t> generator_bound(StructureKind kind, int n);

enum class Verdict3 { valid, invalid, valid_up_to_bound };
std::string_view to_string(Verdict3 v);

struct DecisionOutcome {
  Verdict3 verdict = Verdict3::valid;
  std::optional<OrderedStructure> countermodel;
  Tuple assignment;  // over the original sentence's variables
  int k = 0;
  std::size_t size_bound = 0;
  std::size_t configurations = 0;
};

/// Exact for poset (k ≤ 6), join/meet-semilattices (k ≤ 5), Boolean algebras
/// (k ≤ 3) and distributive lattices (k ≤ 3). Distributive lattices beyond
/// that fall back to a bounded search and report valid_up_to_bound; other
/// kinds throw BoundExceeded.
DecisionOutcome decide_universal(const TheoryProfile& profile, const Sentence& s);

/// Every expanded model of size ≤ size_bound. Throws BoundExceeded when the
/// number of operation tables per base model exceeds `cap`.
DecisionOutcome brute_force_decide(const TheoryProfile& profile, const Sentence& s, int size_bound,
                                   double cap = 2e7);

}  // namespace supamal
