#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "supamal/structure.hpp"

namespace supamal {

/// Total table over `n` elements; -1 marks cells outside the domain.
std::vector<Elem> dense_table(const PartialOp& g, int n);
PartialOp unary_partial(std::initializer_list<std::pair<Elem, Elem>> values);
PartialOp partial_from_table(std::span<const Elem> table, int n, int arity);

/// Exact check of `w` over every tuple of the carrier.
Verdict verify_property(const OrderedStructure& host, const PropertySpec& w, std::span<const Elem> table);

/// The necessary (and, over complete hosts, sufficient) condition for `g` to
/// extend to an operation with property `w`. Throws InputError on arity mismatch.
Verdict check_necessary(const PropertySpec& w, const OrderedStructure& host, const PartialOp& g);

/// A total operation extending `g` with property `w`.
///
/// B1, B1e, B3 and B5 return the pointwise-largest such extension, B1c and B4
/// the smallest; A-cases set K to the identity outside the domain (A3 also
/// swaps back images). `extremal` selects the largest extension for A1e and
/// A2e, which needs a top element; it has no effect for other cases.
/// Throws PreconditionError if the condition fails or a needed bound is missing.
std::vector<Elem> extend(const PropertySpec& w, const OrderedStructure& host, const PartialOp& g,
                         bool extremal = false);

/// Largest isotone idempotent operation below `h`. Requires h isotone and hh ≤ h.
std::vector<Elem> iterate_idempotent(const OrderedStructure& host, std::span<const Elem> h);

/// Largest isotone idempotent operation below every member of `ks`.
std::vector<Elem> meet_idempotent_family(const OrderedStructure& host, const std::vector<std::vector<Elem>>& ks);

/// Partial operations sharing one domain, indexed by a poset over `names`:
/// z ⪯ z' requires G_z ≤ G_z' pointwise.
struct ComparabilitySpec {
  std::vector<std::string> names;
  FinitePoset order;
  std::vector<PartialOp> ops;
};

/// Total extensions K_z, each with property `w`, with K_z ≤ K_z' whenever z ⪯ z'.
std::map<std::string, std::vector<Elem>> extend_family(const PropertySpec& w, const OrderedStructure& host,
                                                       const ComparabilitySpec& spec);

/// Exhaustive search over total tables extending `g`, pruned only by the
/// definitions of the properties. `visit` returns false to stop early.
/// Throws BoundExceeded if the unpruned space exceeds `cap`.
void enumerate_extensions(const PropertySpec& w, const OrderedStructure& host, const PartialOp& g,
                          const std::function<bool(const std::vector<Elem>&)>& visit, double cap = 1e9);

bool brute_force_extension_exists(const PropertySpec& w, const OrderedStructure& host, const PartialOp& g,
                                  double cap = 1e9);

}  // namespace supamal
