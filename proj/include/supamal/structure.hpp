#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "supamal/poset.hpp"
#include "supamal/property.hpp"

namespace supamal {

/// Ordered from weakest to strongest; the two semilattice kinds are incomparable.
enum class StructureKind : std::uint8_t {
  poset,
  meet_semilattice,
  join_semilattice,
  lattice,
  bounded_lattice,
  distributive_lattice,
  boolean_algebra,
};

std::string_view to_string(StructureKind k);
/// Accepts the canonical names plus the short aliases `jsl`, `msl`, `dl`, `ba`, `boolean`.
std::optional<StructureKind> kind_from_string(std::string_view s);
/// True if every structure of kind `strong` is also one of kind `weak`.
bool implies(StructureKind strong, StructureKind weak);
inline bool has_join(StructureKind k) { return implies(k, StructureKind::join_semilattice); }
inline bool has_meet(StructureKind k) { return implies(k, StructureKind::meet_semilattice); }
inline bool has_constants(StructureKind k) { return implies(k, StructureKind::bounded_lattice); }
inline bool has_complement(StructureKind k) { return k == StructureKind::boolean_algebra; }

/// A total added operation; `table` is indexed by `tuple_index`.
struct Operation {
  std::string name;
  PropertySpec property;
  std::vector<Elem> table;

  int arity() const { return property.arity; }
  Elem operator()(Elem x) const { return table[static_cast<std::size_t>(x)]; }
  Elem at(const Tuple& t, int size) const { return table[tuple_index(t, size)]; }
  friend bool operator==(const Operation&, const Operation&) = default;
};

/// A partial operation: domain X ⊆ Pⁿ with values V.
struct PartialOp {
  int arity = 1;
  std::map<Tuple, Elem> values;

  bool defined(const Tuple& t) const { return values.count(t) != 0; }
  friend bool operator==(const PartialOp&, const PartialOp&) = default;
};

struct NamedPartialOp {
  std::string name;
  PropertySpec property;
  PartialOp op;
  friend bool operator==(const NamedPartialOp&, const NamedPartialOp&) = default;
};

/// `lower` ≤ `upper` pointwise.
struct Comparability {
  std::string lower;
  std::string upper;
  friend bool operator==(const Comparability&, const Comparability&) = default;
  friend auto operator<=>(const Comparability&, const Comparability&) = default;
};

/// A finite poset tagged with a kind and the tables that kind requires.
///
/// Lattice tables are derived from the order; a cell is -1 when the bound
/// does not exist, which `validate` reports for kinds that require it.
struct OrderedStructure {
  FinitePoset poset;
  StructureKind kind = StructureKind::poset;
  std::vector<std::string> names;
  std::vector<Elem> join_table;
  std::vector<Elem> meet_table;
  std::vector<Elem> complement;
  std::optional<Elem> bottom;
  std::optional<Elem> top;
  std::vector<Operation> ops;  // sorted by name
  std::vector<NamedPartialOp> partial_ops;
  std::vector<Comparability> comparabilities;

  int size() const { return poset.size(); }
  bool leq(Elem a, Elem b) const { return poset.leq(a, b); }
  Elem join(Elem a, Elem b) const { return join_table[cell(a, b)]; }
  Elem meet(Elem a, Elem b) const { return meet_table[cell(a, b)]; }

  std::optional<Elem> index_of(std::string_view name) const;
  /// Throws InputError for unknown names.
  Elem element(std::string_view name) const;
  const Operation* op(std::string_view name) const;
  const NamedPartialOp* partial_op(std::string_view name) const;
  /// Keeps `ops` sorted; replaces an operation of the same name.
  void set_op(Operation op);

  friend bool operator==(const OrderedStructure&, const OrderedStructure&) = default;

 private:
  std::size_t cell(Elem a, Elem b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(size()) + static_cast<std::size_t>(b);
  }
};

/// Derives tables for `kind`; never throws on missing bounds (see `validate`).
OrderedStructure build_structure(FinitePoset p, StructureKind kind, std::vector<std::string> names = {});
/// As `build_structure`, but throws InputError when the result fails `validate`.
OrderedStructure make_structure(FinitePoset p, StructureKind kind, std::vector<std::string> names = {});
/// The largest kind the poset satisfies, capped at `ceiling`.
StructureKind strongest_kind(const FinitePoset& p, StructureKind ceiling = StructureKind::boolean_algebra);

struct Violation {
  std::string what;
  std::vector<Elem> witnesses;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const OrderedStructure& s);

enum class Direction { meet, join };

/// Greatest lower bound / least upper bound of `subset`, if it exists.
/// The meet of the empty set is the top element, the join is the bottom.
std::optional<Elem> bound(const FinitePoset& p, std::span<const Elem> subset, Direction d);
inline std::optional<Elem> bound(const OrderedStructure& s, std::span<const Elem> subset, Direction d) {
  return bound(s.poset, subset, d);
}

/// Element map source → target.
struct Embedding {
  std::vector<Elem> map;
  Elem operator()(Elem x) const { return map[static_cast<std::size_t>(x)]; }
  friend bool operator==(const Embedding&, const Embedding&) = default;
};

/// Injective, order-preserving and -reflecting, preserving every operation of
/// `source.kind`; with `added_ops`, also every added operation both sides name.
Verdict check_embedding(const OrderedStructure& source, const OrderedStructure& target, const Embedding& e,
                        bool added_ops = true);

struct Substructure {
  OrderedStructure structure;
  Embedding inclusion;
};

/// Closure of `gens` under the kind's operations (and added operations when
/// requested); elements keep their relative order and names.
Substructure generated_substructure(const OrderedStructure& s, std::span<const Elem> gens, bool added_ops = true);
/// The substructure on exactly `elems` (sorted), restricting added operations;
/// throws PreconditionError if `elems` is not closed.
Substructure restrict_to(const OrderedStructure& s, std::span<const Elem> elems);

/// Element `e` of `s` becomes `perm[e]`.
OrderedStructure permute(const OrderedStructure& s, std::span<const Elem> perm);

/// The powerset algebra over `atoms`; element with bitmask m has index m.
OrderedStructure boolean_algebra(const std::vector<std::string>& atoms);
OrderedStructure boolean_algebra(int atoms);
/// Name of a bitmask element of `boolean_algebra(atoms)`.
std::string subset_name(const std::vector<std::string>& atoms, unsigned mask);

}  // namespace supamal
