#pragma once

#include "supamal/structure.hpp"

namespace supamal {

struct Completion {
  OrderedStructure lattice;
  /// Source element → lattice element. Source elements keep their indices.
  Embedding embedding;
};

/// Dedekind–MacNeille completion: the lattice of cuts, with x ↦ ↓x.
/// Source elements come first under their own names; new cuts follow,
/// ordered by size and then content, and are named `#1`, `#2`, ... skipping
/// names already in use. Added operations are not carried over.
Completion macneille_completion(const OrderedStructure& p);
Completion macneille_completion(const FinitePoset& p);

/// The join-irreducible elements: exactly one lower cover.
std::vector<Elem> join_irreducibles(const OrderedStructure& d);

/// Embeds a finite distributive lattice into the powerset algebra of its
/// join-irreducibles via x ↦ {j ≤ x}. Throws PreconditionError naming a
/// failing triple when `d` is not distributive.
Completion birkhoff_embedding(const OrderedStructure& d);

}  // namespace supamal
