#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "supamal/common.hpp"

namespace supamal {

/// Binary lattice term over variables x1..xi, stored as a node array.
class LatticeTerm {
 public:
  enum class Op : std::uint8_t { var, join, meet };
  struct Node {
    Op op;
    int var;  // 0-based, for Op::var
    int left;
    int right;
    friend bool operator==(const Node&, const Node&) = default;
  };

  static LatticeTerm variable(int index);
  static LatticeTerm join(const LatticeTerm& a, const LatticeTerm& b);
  static LatticeTerm meet(const LatticeTerm& a, const LatticeTerm& b);
  /// Accepts `x1 \/ x2`, `x1 /\ x2`, `x1 ^ x2`, `x1 v x2` and parentheses.
  static LatticeTerm parse(std::string_view text);

  /// Largest variable index + 1.
  int arity() const;
  std::string to_string() const;

  template <class JoinFn, class MeetFn>
  Elem evaluate(const Tuple& args, JoinFn&& join, MeetFn&& meet) const {
    return eval_node(root_, args, join, meet);
  }

  friend bool operator==(const LatticeTerm&, const LatticeTerm&) = default;

 private:
  template <class JoinFn, class MeetFn>
  Elem eval_node(int i, const Tuple& args, JoinFn& join, MeetFn& meet) const {
    const Node& n = nodes_[static_cast<std::size_t>(i)];
    switch (n.op) {
      case Op::var: return args[static_cast<std::size_t>(n.var)];
      case Op::join: return join(eval_node(n.left, args, join, meet), eval_node(n.right, args, join, meet));
      case Op::meet: return meet(eval_node(n.left, args, join, meet), eval_node(n.right, args, join, meet));
    }
    return -1;
  }
  std::string node_string(int i) const;
  int append(const LatticeTerm& other);

  std::vector<Node> nodes_;
  int root_ = -1;
};

/// The catalogue of operation properties an added operation may carry.
///
/// A-cases need nothing but an order; B- and C-cases need meets (joins for
/// B1c and B4) of the relevant value sets; C3 needs a lattice.
enum class PropertyCase : std::uint8_t {
  A1e, A1c, A2, A2e, A2c, A3,
  B1, B1e, B1c, B2, B3, B4, B5,
  C1, C2, C3,
};

std::string_view to_string(PropertyCase c);
std::optional<PropertyCase> property_case_from_string(std::string_view s);
bool is_c_case(PropertyCase c);
bool is_b_case(PropertyCase c);

struct PropertySpec {
  PropertyCase kind = PropertyCase::B3;
  int arity = 1;
  /// C-cases: isotone on the first `isotone` positions, antitone on the last `antitone`.
  int isotone = 0;
  int antitone = 0;
  /// C2: 0-based positions (among the first `isotone`) with x_h <= F(x).
  std::vector<int> bounded;
  /// C3: x-term bounded above by F(x).
  std::optional<LatticeTerm> term;

  static PropertySpec unary(PropertyCase c);
  static PropertySpec c1(int n, int i, int j);
  static PropertySpec c2(int n, int i, int j, std::vector<int> bounded);
  static PropertySpec c3(int n, int i, int j, LatticeTerm t);

  /// Throws InputError on inconsistent arity data.
  void check() const;

  /// `B3`, `C1:i=2,j=1,n=4`, `C2:i=2,j=0,n=2,bounded=1+2`, `C3:i=2,j=0,n=2,t=(x1 ^ x2)`.
  static PropertySpec parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const PropertySpec&, const PropertySpec&) = default;
};

}  // namespace supamal
