#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "supamal/structure.hpp"

namespace supamal {

/// A class of finite structures of one kind carrying named added operations.
struct ClassSpec {
  StructureKind kind = StructureKind::poset;
  std::vector<std::pair<std::string, PropertySpec>> ops;
  /// Fixed ∅-generated substructure every member must contain. Required for
  /// kinds without an empty member.
  std::optional<OrderedStructure> root;
};

/// Members with at most `max_size` elements, one per isomorphism class, in
/// size order and then canonical order.
std::vector<OrderedStructure> age(const ClassSpec& spec, int max_size);

/// Calls `visit` for every embedding a → m (checked with added operations)
/// that agrees with `fixed` where fixed[x] ≥ 0. `visit` returns false to stop.
void for_each_embedding(const OrderedStructure& a, const OrderedStructure& m, const std::vector<Elem>& fixed,
                        const std::function<bool(const Embedding&)>& visit);

/// A member B with a substructure A, up to isomorphism of the pair.
struct ClassPair {
  OrderedStructure a;
  OrderedStructure b;
  Embedding inclusion;  // A → B
};

/// Every pair A ⊆ B of members with |B| ≤ cap (A = B excluded).
std::vector<ClassPair> class_pairs(const ClassSpec& spec, int cap);

/// Realize B over an embedding of A into the current stage.
struct FraisseTask {
  int pair = 0;
  int stage = 0;         // stage the map targets
  std::vector<Elem> map;  // A → that stage
};

struct FraisseChain {
  std::vector<ClassPair> pairs;
  std::vector<OrderedStructure> stages;  // one per round, stages[0] the root
  std::vector<Embedding> inclusions;     // stages[i] → stages[i+1]
  std::vector<std::size_t> realized;     // tasks realized per round
  std::vector<std::size_t> amalgamated;  // tasks needing a new amalgam per round
  std::vector<FraisseTask> residual;     // tasks against the last stage
};

/// Round-based chain: round r realizes every task targeting stage r-1 by
/// amalgamating the growing structure with B over A; the tasks its new
/// elements create are queued for round r+1.
FraisseChain build_chain(const ClassSpec& spec, int steps, int pair_size_cap);

struct ExtensionReport {
  bool ok = true;
  std::vector<FraisseTask> missing;  // `stage` is unused (0)
};

/// For every class pair with |B| ≤ cap and embedding f: A → m whose image lies
/// in `within` (all of m when absent), some embedding B → m extends f.
ExtensionReport check_extension_property(const OrderedStructure& m, const ClassSpec& spec, int pair_size_cap,
                                         const std::optional<std::vector<Elem>>& within = std::nullopt);

}  // namespace supamal
