#pragma once

#include <span>
#include <string>
#include <vector>

#include "supamal/structure.hpp"

namespace supamal {

struct CanonicalForm {
  /// Equal for two structures iff they are isomorphic (respecting colors).
  std::string signature;
  /// labeling[e] is the canonical position of element e.
  std::vector<Elem> labeling;
};

/// Minimizes the order code, then the added-operation tables, over all
/// labelings compatible with an invariant color refinement. `colors`, when
/// given, must be preserved by isomorphisms. Partial operations are ignored.
/// Throws BoundExceeded when the search would visit more than `node_cap` nodes.
CanonicalForm canonical_form(const OrderedStructure& s, std::span<const int> colors = {},
                             std::size_t node_cap = 20'000'000);

/// The structure relabeled into canonical positions.
OrderedStructure canonical_structure(const OrderedStructure& s);

bool isomorphic(const OrderedStructure& a, const OrderedStructure& b);

}  // namespace supamal
