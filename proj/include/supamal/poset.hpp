#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "supamal/common.hpp"

namespace supamal {

/// A finite partial order stored as a dense relation matrix.
///
/// Instances built through `from_pairs` or `from_matrix` are guaranteed to be
/// reflexive, antisymmetric and transitive. `unchecked` skips the checks and
/// exists for callers that construct orders they already know to be valid
/// (subset orders, completions) or that want `validate` to report problems.
class FinitePoset {
 public:
  FinitePoset() = default;

  /// Reflexive-transitive closure of `pairs`; throws InputError naming the
  /// first pair violating antisymmetry.
  static FinitePoset from_pairs(int size, std::span<const std::pair<Elem, Elem>> pairs);
  static FinitePoset from_matrix(int size, std::vector<std::uint8_t> leq);
  static FinitePoset unchecked(int size, std::vector<std::uint8_t> leq);

  static FinitePoset chain(int size);
  static FinitePoset antichain(int size);

  int size() const noexcept { return size_; }
  bool leq(Elem a, Elem b) const noexcept {
    return leq_[static_cast<std::size_t>(a) * static_cast<std::size_t>(size_) + static_cast<std::size_t>(b)] != 0;
  }
  bool less(Elem a, Elem b) const noexcept { return a != b && leq(a, b); }
  bool comparable(Elem a, Elem b) const noexcept { return leq(a, b) || leq(b, a); }

  const std::vector<std::uint8_t>& matrix() const noexcept { return leq_; }

  /// First violation of reflexivity/antisymmetry/transitivity, if any.
  struct Defect {
    enum class Kind { reflexivity, antisymmetry, transitivity } kind;
    std::vector<Elem> witnesses;
  };
  std::vector<Defect> defects() const;

  /// Induced order on `elems` (positions follow the given order).
  FinitePoset induced(std::span<const Elem> elems) const;
  FinitePoset dual() const;
  /// Relabel: element `e` of *this becomes `perm[e]` in the result.
  FinitePoset permuted(std::span<const Elem> perm) const;

  std::vector<Elem> lower_covers(Elem x) const;
  std::vector<Elem> upper_covers(Elem x) const;
  /// Upper covers of every element at once (bitset-based, for large carriers).
  std::vector<std::vector<Elem>> all_upper_covers() const;
  std::vector<Elem> minimal_elements() const;
  std::vector<Elem> maximal_elements() const;

  friend bool operator==(const FinitePoset&, const FinitePoset&) = default;

 private:
  FinitePoset(int size, std::vector<std::uint8_t> leq) : size_(size), leq_(std::move(leq)) {}

  int size_ = 0;
  std::vector<std::uint8_t> leq_;
};

/// In-place Warshall closure of a square 0/1 matrix.
void transitive_closure(std::vector<std::uint8_t>& m, int size);

}  // namespace supamal
