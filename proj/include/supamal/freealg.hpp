#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "supamal/structure.hpp"

namespace supamal {

/// Term over generators with binary join and a unary closure symbol K.
class SLCTerm {
 public:
  enum class Op : std::uint8_t { gen, join, closure };
  struct Node {
    Op op;
    int gen;  // Op::gen only
    int left;
    int right;  // Op::join only
  };

  static SLCTerm generator(int index);
  static SLCTerm join(const SLCTerm& a, const SLCTerm& b);
  static SLCTerm closure(const SLCTerm& a);

  /// Parses `K(x \/ K(y))`. Identifiers are looked up in `gens` and appended
  /// when new, so several terms can share one generator list.
  static SLCTerm parse(std::string_view text, std::vector<std::string>& gens);

  /// One more than the largest generator index used.
  int generator_bound() const;
  int root() const { return static_cast<int>(nodes_.size()) - 1; }
  const std::vector<Node>& nodes() const { return nodes_; }
  std::string to_string(const std::vector<std::string>& gens) const;

  template <class JoinFn, class KFn>
  Elem evaluate(const Tuple& args, JoinFn&& join, KFn&& k) const {
    std::vector<Elem> val(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& n = nodes_[i];
      switch (n.op) {
        case Op::gen: val[i] = args[static_cast<std::size_t>(n.gen)]; break;
        case Op::join: val[i] = join(val[static_cast<std::size_t>(n.left)], val[static_cast<std::size_t>(n.right)]); break;
        case Op::closure: val[i] = k(val[static_cast<std::size_t>(n.left)]); break;
      }
    }
    return val.back();
  }

 private:
  int append(const SLCTerm& t);
  std::vector<Node> nodes_;  // children precede parents; the root is last
};

/// x_J ∨ K(S_1) ∨ ... ∨ K(S_r), generator sets as bitmasks.
/// J is disjoint from every S_i, the S_i form a ⊆-antichain, and the form is
/// never empty.
struct SLCNormalForm {
  std::uint32_t j = 0;
  std::vector<std::uint32_t> s;  // sorted

  std::uint32_t support() const;
  std::string to_string(const std::vector<std::string>& gens) const;
  friend auto operator<=>(const SLCNormalForm&, const SLCNormalForm&) = default;
};

SLCNormalForm normalize(const SLCTerm& t);
SLCNormalForm nf_join(const SLCNormalForm& a, const SLCNormalForm& b);
SLCNormalForm nf_closure(const SLCNormalForm& a);
SLCTerm nf_term(const SLCNormalForm& f);
bool term_equal(const SLCTerm& s, const SLCTerm& t);

inline constexpr int kFreeGeneratorCap = 3;

struct FreeAlgebra {
  OrderedStructure algebra;  // join-semilattice with closure operation "K"
  std::vector<SLCNormalForm> forms;  // forms[e] is element e
  std::vector<Elem> generators;
  std::vector<std::string> generator_names;
};

/// Default generator names: x, y, z for up to three, else x1..xn.
std::vector<std::string> default_generator_names(int n);

/// Throws BoundExceeded for n above `cap`, InputError for n < 1.
FreeAlgebra free_algebra(int n, int cap = kFreeGeneratorCap);

/// A join-semilattice with closure "K" plus an assignment of generators.
struct SLCCountermodel {
  OrderedStructure model;
  Tuple assignment;
};

/// Every join-semilattice with a closure operation of size 1..max_size, up to
/// isomorphism of the underlying semilattice (all closure tables kept).
const std::vector<OrderedStructure>& closure_models(int max_size);

/// Smallest model (in `closure_models` order) and first assignment where s and
/// t differ, if any exists up to `max_size`.
std::optional<SLCCountermodel> separating_model(const SLCTerm& s, const SLCTerm& t, int gens, int max_size);

}  // namespace supamal
