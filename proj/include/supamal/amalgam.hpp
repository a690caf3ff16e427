#pragma once

#include <string>
#include <vector>

#include "supamal/structure.hpp"

namespace supamal {

/// A, B and C of one kind with C ⊆ A, C ⊆ B and A ∩ B = C, all identified by
/// element names.
struct AmalgamationInstance {
  OrderedStructure a;
  OrderedStructure b;
  OrderedStructure c;
};

/// A cross pair related in D together with its C-interpolant (D indices).
/// `a_below_b`: a ≤ c ≤ b; otherwise b ≤ c ≤ a.
struct Interpolant {
  Elem a;
  Elem b;
  Elem c;
  bool a_below_b;
};

struct SuperamalgamResult {
  AmalgamationInstance instance;
  OrderedStructure d;
  Embedding embed_a;
  Embedding embed_b;
  std::vector<Interpolant> interpolants;
  /// True when D has elements outside the union of the two images.
  bool completed = false;
};

/// Throws InputError unless the instance is well formed for `kind`: each
/// structure validates, C sits inside A and B as a substructure (with added
/// operations when `added_ops`), and A ∩ B = C by name.
void check_instance(const AmalgamationInstance& inst, StructureKind kind, bool added_ops);

/// D over A ∪ B ordered by ≤A ∪ ≤B ∪ (≤A∘≤B) ∪ (≤B∘≤A) through C.
/// A's elements come first, then B ∖ C.
SuperamalgamResult jonsson_poset_amalgam(const AmalgamationInstance& inst);

/// The four-piece relation itself, over the carrier of `jonsson_poset_amalgam`.
std::vector<std::uint8_t> four_piece_relation(const AmalgamationInstance& inst);

/// Posets: the Jónsson amalgam. Semilattices and lattices: its MacNeille
/// completion, tagged with `kind`. Added operations are ignored.
SuperamalgamResult amalgamate(const AmalgamationInstance& inst, StructureKind kind);

/// Finite free product with amalgamation: atoms are pairs of an A-atom and a
/// B-atom below the same C-atom.
SuperamalgamResult boolean_amalgam(const AmalgamationInstance& inst);

struct ExpandedOptions {
  /// Poset kind only: keep D = A ∪ B when every glued operation already
  /// extends there, instead of always completing.
  bool prefer_union = false;
};

/// Amalgamates the reducts, completes when needed, glues every added
/// operation on A ∪ B and extends it (jointly for comparable families).
SuperamalgamResult amalgamate_expanded(const AmalgamationInstance& inst, ExpandedOptions options = {});

/// Embeddings, agreement on C, strong amalgamation and both interpolation clauses.
Verdict verify_superamalgam(const SuperamalgamResult& r);

/// A carrier with a transitive relation R and unary R-isotone or R-antitone operations.
struct RelationalStructure {
  struct UnaryOp {
    std::string name;
    bool antitone = false;
    std::vector<Elem> table;
  };
  std::vector<std::string> names;
  std::vector<std::uint8_t> r;  // size × size
  std::vector<UnaryOp> ops;

  int size() const { return static_cast<int>(names.size()); }
  bool rel(Elem a, Elem b) const {
    return r[static_cast<std::size_t>(a) * names.size() + static_cast<std::size_t>(b)] != 0;
  }
};

struct RelationalAmalgam {
  RelationalStructure d;
  std::vector<Elem> embed_a;
  std::vector<Elem> embed_b;
  std::vector<Interpolant> interpolants;
};

/// Amalgam over A ∪ B with R the four-piece relation and each operation
/// glued from A and B. Throws PreconditionError when an input relation is not
/// transitive, the four-piece relation is not, or a glued operation loses its
/// monotonicity (witness pair attached).
RelationalAmalgam union_relational_amalgam(const RelationalStructure& a, const RelationalStructure& b,
                                           const RelationalStructure& c);

}  // namespace supamal
