#pragma once

#include <vector>

#include "supamal/structure.hpp"

namespace supamal {

/// Largest size `enumerate_structures` accepts for non-Boolean kinds.
inline constexpr int kEnumerationCap = 8;

/// One structure of `kind` per isomorphism class with exactly `size`
/// elements, canonically labeled, sorted by canonical signature.
/// Bounded kinds have no empty member; Boolean algebras exist only at powers
/// of two. Throws BoundExceeded above the cap. Results are cached.
const std::vector<OrderedStructure>& enumerate_structures(StructureKind kind, int size);

}  // namespace supamal
