#include "supamal/logic.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>
#include <map>
#include <mutex>

#include "supamal/completion.hpp"
#include "supamal/enumerate.hpp"
#include "supamal/extension.hpp"

namespace supamal {

bool Term::has_operations() const {
  if (kind == Kind::apply) return true;
  return std::any_of(args.begin(), args.end(), [](const Term& t) { return t.has_operations(); });
}

int TheoryProfile::op_index(std::string_view name) const {
  for (std::size_t i = 0; i < ops.size(); ++i)
    if (ops[i].first == name) return static_cast<int>(i);
  return -1;
}

void TheoryProfile::add_op(std::string_view decl) {
  const auto colon = decl.find(':');
  if (colon == std::string_view::npos || colon == 0) throw InputError("operation declaration must look like NAME:PROPERTY, got '" + std::string(decl) + "'");
  std::string name(decl.substr(0, colon));
  if (!std::isalpha(static_cast<unsigned char>(name[0])) ||
      !std::all_of(name.begin(), name.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }))
    throw InputError("bad operation name '" + name + "'");
  if (op_index(name) >= 0) throw InputError("operation " + name + " declared twice");
  ops.emplace_back(name, PropertySpec::parse(decl.substr(colon + 1)));
}

// ---------------------------------------------------------------- parsing

namespace {

struct ParseFailure {
  std::size_t pos;
  std::string msg;
};

class SentenceParser {
 public:
  SentenceParser(std::string_view text, const TheoryProfile& profile) : text_(text), profile_(profile) {}

  Sentence parse() {
    try {
      Sentence s;
      for (const auto& [name, w] : profile_.ops) s.ops.push_back(name);
      if (!keyword("forall")) fail("expected 'forall'");
      while (true) {
        skip();
        if (eat(".")) break;
        const std::size_t at = pos_;
        std::string v = ident();
        if (v.empty()) fail("expected a variable or '.'");
        if (v == "forall") fail_at(at, "'forall' is reserved");
        if (std::find(s.vars.begin(), s.vars.end(), v) != s.vars.end()) fail_at(at, "variable " + v + " bound twice");
        s.vars.push_back(v);
      }
      if (s.vars.empty()) fail("at least one variable must be bound");
      vars_ = &s.vars;
      s.matrix = implication();
      skip();
      if (pos_ != text_.size()) fail("unexpected trailing input");
      return s;
    } catch (const ParseFailure& f) {
      throw InputError("position " + std::to_string(f.pos + 1) + ": " + f.msg);
    }
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { fail_at(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) { throw ParseFailure{at, msg}; }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(std::string_view tok) {
    skip();
    return text_.substr(pos_, tok.size()) == tok;
  }
  bool eat(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }
  bool keyword(std::string_view kw) {
    skip();
    const std::size_t save = pos_;
    if (ident() == kw) return true;
    pos_ = save;
    return false;
  }
  std::string ident() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Formula binary(Formula::Kind k, Formula a, Formula b) {
    Formula f;
    f.kind = k;
    f.sub = {std::move(a), std::move(b)};
    return f;
  }

  Formula implication() {
    Formula f = disjunction();
    if (eat("->")) return binary(Formula::Kind::implication, std::move(f), implication());
    return f;
  }
  Formula disjunction() {
    Formula f = conjunction();
    while (eat("|")) f = binary(Formula::Kind::disjunction, std::move(f), conjunction());
    return f;
  }
  Formula conjunction() {
    Formula f = unary();
    while (eat("&")) f = binary(Formula::Kind::conjunction, std::move(f), unary());
    return f;
  }
  Formula unary() {
    if (eat("!")) {
      Formula f;
      f.kind = Formula::Kind::negation;
      f.sub = {unary()};
      return f;
    }
    if (peek("(")) {
      // Either a parenthesized formula or an atom whose left term starts with '('.
      const std::size_t save = pos_;
      std::optional<ParseFailure> first;
      try {
        eat("(");
        Formula f = implication();
        if (!eat(")")) fail("expected ')'");
        if (!(peek("=") || peek("<=") || peek("\\/") || peek("/\\"))) return f;
      } catch (const ParseFailure& e) {
        first = e;
      }
      const std::size_t after_formula = pos_;
      pos_ = save;
      try {
        return atom();
      } catch (const ParseFailure& e) {
        if (first && first->pos > e.pos) throw *first;
        if (!first && after_formula > e.pos) fail_at(after_formula, "expected a connective or ')'");
        throw;
      }
    }
    return atom();
  }
  Formula atom() {
    Formula f;
    f.lhs = term();
    if (eat("<=")) {
      f.kind = Formula::Kind::le;
    } else if (eat("=")) {
      f.kind = Formula::Kind::eq;
    } else {
      fail("expected '=' or '<='");
    }
    f.rhs = term();
    return f;
  }

  void need(bool ok, std::size_t at, const char* what) {
    if (!ok) fail_at(at, std::string(what) + " is not available for " + std::string(to_string(profile_.kind)));
  }

  Term term() {
    Term t = meet_term();
    while (true) {
      skip();
      const std::size_t at = pos_;
      if (!eat("\\/")) return t;
      need(has_join(profile_.kind), at, "join");
      t = Term{Term::Kind::join, 0, {std::move(t), meet_term()}};
    }
  }
  Term meet_term() {
    Term t = prefix();
    while (true) {
      skip();
      const std::size_t at = pos_;
      if (!eat("/\\")) return t;
      need(has_meet(profile_.kind), at, "meet");
      t = Term{Term::Kind::meet, 0, {std::move(t), prefix()}};
    }
  }
  Term prefix() {
    skip();
    const std::size_t at = pos_;
    if (eat("~")) {
      need(has_complement(profile_.kind), at, "complement");
      return Term{Term::Kind::complement, 0, {prefix()}};
    }
    return primary();
  }
  Term primary() {
    skip();
    const std::size_t at = pos_;
    if (eat("(")) {
      Term t = term();
      if (!eat(")")) fail("expected ')'");
      return t;
    }
    if (eat("0")) {
      need(has_constants(profile_.kind), at, "constant 0");
      return Term{Term::Kind::zero, 0, {}};
    }
    if (eat("1")) {
      need(has_constants(profile_.kind), at, "constant 1");
      return Term{Term::Kind::one, 0, {}};
    }
    std::string name = ident();
    if (name.empty()) fail("expected a term");
    if (eat("(")) {
      const int op = profile_.op_index(name);
      if (op < 0) fail_at(at, "unknown operation " + name);
      Term t{Term::Kind::apply, op, {}};
      t.args.push_back(term());
      while (eat(",")) t.args.push_back(term());
      if (!eat(")")) fail("expected ',' or ')'");
      const int arity = profile_.ops[static_cast<std::size_t>(op)].second.arity;
      if (static_cast<int>(t.args.size()) != arity)
        fail_at(at, name + " takes " + std::to_string(arity) + " argument(s), got " + std::to_string(t.args.size()));
      return t;
    }
    auto it = std::find(vars_->begin(), vars_->end(), name);
    if (it == vars_->end()) fail_at(at, "unbound variable " + name);
    return Term::variable(static_cast<int>(it - vars_->begin()));
  }

  std::string_view text_;
  const TheoryProfile& profile_;
  const std::vector<std::string>* vars_ = nullptr;
  std::size_t pos_ = 0;
};

}  // namespace

Sentence parse_sentence(std::string_view text, const TheoryProfile& profile) {
  return SentenceParser(text, profile).parse();
}

std::string Sentence::term_string(const Term& t) const {
  auto wrapped = [&](const Term& x) {
    const bool binary = x.kind == Term::Kind::join || x.kind == Term::Kind::meet;
    return binary ? "(" + term_string(x) + ")" : term_string(x);
  };
  switch (t.kind) {
    case Term::Kind::var: return vars.at(static_cast<std::size_t>(t.index));
    case Term::Kind::zero: return "0";
    case Term::Kind::one: return "1";
    case Term::Kind::complement: return "~" + wrapped(t.args[0]);
    case Term::Kind::join: return wrapped(t.args[0]) + " \\/ " + wrapped(t.args[1]);
    case Term::Kind::meet: return wrapped(t.args[0]) + " /\\ " + wrapped(t.args[1]);
    case Term::Kind::apply: {
      std::string out = ops.at(static_cast<std::size_t>(t.index)) + "(";
      for (std::size_t i = 0; i < t.args.size(); ++i) out += (i ? ", " : "") + term_string(t.args[i]);
      return out + ")";
    }
  }
  return {};
}

namespace {

std::string formula_string(const Sentence& s, const Formula& f) {
  auto wrapped = [&](const Formula& g) {
    const bool atomic = g.kind == Formula::Kind::eq || g.kind == Formula::Kind::le || g.kind == Formula::Kind::negation;
    return atomic ? formula_string(s, g) : "(" + formula_string(s, g) + ")";
  };
  auto joined = [&](const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < f.sub.size(); ++i) out += (i ? sep : "") + wrapped(f.sub[i]);
    return out;
  };
  switch (f.kind) {
    case Formula::Kind::eq: return s.term_string(f.lhs) + " = " + s.term_string(f.rhs);
    case Formula::Kind::le: return s.term_string(f.lhs) + " <= " + s.term_string(f.rhs);
    case Formula::Kind::negation: return "!" + wrapped(f.sub[0]);
    case Formula::Kind::conjunction: return joined(" & ");
    case Formula::Kind::disjunction: return joined(" | ");
    case Formula::Kind::implication: return joined(" -> ");
  }
  return {};
}

}  // namespace

std::string Sentence::to_string() const {
  std::string out = "forall";
  for (const auto& v : vars) out += " " + v;
  return out + " . " + formula_string(*this, matrix);
}

// ---------------------------------------------------------------- evaluation

namespace {

class Evaluator {
 public:
  Evaluator(const OrderedStructure& m, const Sentence& s) : m_(m) {
    for (const auto& name : s.ops) ops_.push_back(m.op(name));
  }

  Elem term(const Term& t, const Tuple& args) const {
    switch (t.kind) {
      case Term::Kind::var: return args[static_cast<std::size_t>(t.index)];
      case Term::Kind::zero: return constant(m_.bottom, "0");
      case Term::Kind::one: return constant(m_.top, "1");
      case Term::Kind::complement:
        if (m_.complement.empty()) throw InputError("model has no complement");
        return m_.complement[static_cast<std::size_t>(term(t.args[0], args))];
      case Term::Kind::join: {
        if (m_.join_table.empty()) throw InputError("model has no join");
        const Elem r = m_.join(term(t.args[0], args), term(t.args[1], args));
        if (r < 0) throw InputError("join undefined in model");
        return r;
      }
      case Term::Kind::meet: {
        if (m_.meet_table.empty()) throw InputError("model has no meet");
        const Elem r = m_.meet(term(t.args[0], args), term(t.args[1], args));
        if (r < 0) throw InputError("meet undefined in model");
        return r;
      }
      case Term::Kind::apply: {
        const Operation* op = ops_[static_cast<std::size_t>(t.index)];
        if (!op) throw InputError("model lacks an operation used by the sentence");
        if (op->arity() != static_cast<int>(t.args.size())) throw InputError("operation " + op->name + " has the wrong arity");
        std::size_t idx = 0;
        for (const auto& a : t.args) idx = idx * static_cast<std::size_t>(m_.size()) + static_cast<std::size_t>(term(a, args));
        return op->table[idx];
      }
    }
    return -1;
  }

  bool formula(const Formula& f, const Tuple& args) const {
    switch (f.kind) {
      case Formula::Kind::eq: return term(f.lhs, args) == term(f.rhs, args);
      case Formula::Kind::le: return m_.leq(term(f.lhs, args), term(f.rhs, args));
      case Formula::Kind::negation: return !formula(f.sub[0], args);
      case Formula::Kind::conjunction:
        return std::all_of(f.sub.begin(), f.sub.end(), [&](const Formula& g) { return formula(g, args); });
      case Formula::Kind::disjunction:
        return std::any_of(f.sub.begin(), f.sub.end(), [&](const Formula& g) { return formula(g, args); });
      case Formula::Kind::implication: {
        // Right-nested: a -> b -> c is a -> (b -> c).
        for (std::size_t i = 0; i + 1 < f.sub.size(); ++i)
          if (!formula(f.sub[i], args)) return true;
        return formula(f.sub.back(), args);
      }
    }
    return false;
  }

 private:
  static Elem constant(const std::optional<Elem>& c, const char* name) {
    if (!c) throw InputError(std::string("model has no constant ") + name);
    return *c;
  }
  const OrderedStructure& m_;
  std::vector<const Operation*> ops_;
};

}  // namespace

Elem evaluate_term(const OrderedStructure& m, const Sentence& s, const Term& t, const Tuple& args) {
  return Evaluator(m, s).term(t, args);
}

bool evaluate_formula(const OrderedStructure& m, const Sentence& s, const Formula& f, const Tuple& args) {
  return Evaluator(m, s).formula(f, args);
}

EvalResult evaluate(const OrderedStructure& m, const Sentence& s) {
  for (const auto& name : s.ops)
    if (!m.op(name)) throw InputError("model lacks operation " + name);
  Evaluator ev(m, s);
  const int k = static_cast<int>(s.vars.size());
  const std::size_t total = ipow(static_cast<std::size_t>(m.size()), k);
  for (std::size_t i = 0; i < total; ++i) {
    Tuple args = tuple_at(i, m.size(), k);
    if (!ev.formula(s.matrix, args)) return {false, std::move(args)};
  }
  return {};
}

// ---------------------------------------------------------------- flattening

namespace {

class Flattener {
 public:
  explicit Flattener(FlatSentence& out) : out_(out) {}

  Term term(const Term& t) {
    Term r{t.kind, t.index, {}};
    for (const auto& a : t.args) r.args.push_back(term(a));
    if (t.kind != Term::Kind::apply) return r;
    for (const auto& p : out_.premises)
      if (p.op == r.index && p.args == r.args) return Term::variable(p.var);
    const int var = static_cast<int>(out_.sentence.vars.size());
    out_.sentence.vars.push_back(fresh());
    out_.premises.push_back({r.index, std::move(r.args), var});
    return Term::variable(var);
  }

  Formula formula(const Formula& f) {
    Formula r;
    r.kind = f.kind;
    if (f.kind == Formula::Kind::eq || f.kind == Formula::Kind::le) {
      r.lhs = term(f.lhs);
      r.rhs = term(f.rhs);
    }
    for (const auto& g : f.sub) r.sub.push_back(formula(g));
    return r;
  }

 private:
  std::string fresh() {
    const auto& vars = out_.sentence.vars;
    std::string n;
    do {
      n = "y" + std::to_string(++counter_);
    } while (std::find(vars.begin(), vars.end(), n) != vars.end());
    return n;
  }
  FlatSentence& out_;
  int counter_ = 0;
};

}  // namespace

FlatSentence flatten(const Sentence& s) {
  FlatSentence out;
  out.sentence = s;
  out.original_vars = static_cast<int>(s.vars.size());
  Flattener fl(out);
  out.psi = fl.formula(s.matrix);
  if (out.premises.empty()) return out;
  Formula premises;
  premises.kind = Formula::Kind::conjunction;
  for (const auto& p : out.premises) {
    Formula atom;
    atom.kind = Formula::Kind::eq;
    atom.lhs = Term{Term::Kind::apply, p.op, p.args};
    atom.rhs = Term::variable(p.var);
    premises.sub.push_back(std::move(atom));
  }
  if (premises.sub.size() == 1) premises = premises.sub[0];
  Formula m;
  m.kind = Formula::Kind::implication;
  m.sub = {std::move(premises), out.psi};
  out.sentence.matrix = std::move(m);
  return out;
}

// ---------------------------------------------------------------- decision

std::optional<std::size_t> generator_bound(StructureKind kind, int n) {
  switch (kind) {
    case StructureKind::poset: return static_cast<std::size_t>(n);
    case StructureKind::join_semilattice:
    case StructureKind::meet_semilattice:
      return n >= 63 ? std::nullopt : std::optional<std::size_t>((std::size_t{1} << n) - 1);
    case StructureKind::boolean_algebra:
      return n >= 6 ? std::nullopt : std::optional<std::size_t>(std::size_t{1} << (std::size_t{1} << n));
    case StructureKind::distributive_lattice: {
      // Dedekind numbers: free bounded distributive lattices.
      static const std::size_t sizes[] = {2, 3, 6, 20, 168, 7581, 7828354, 2414682040998ull};
      if (n < 0 || n > 7) return std::nullopt;
      return sizes[n];
    }
    default: return std::nullopt;
  }
}

std::string_view to_string(Verdict3 v) {
  switch (v) {
    case Verdict3::valid: return "valid";
    case Verdict3::invalid: return "invalid";
    case Verdict3::valid_up_to_bound: return "valid up to bound";
  }
  return "?";
}

namespace {

using ConfigVisitor = std::function<bool(const OrderedStructure&, const Tuple&)>;

std::vector<std::string> element_names(int n, const std::optional<Elem>& bottom, const std::optional<Elem>& top) {
  std::vector<std::string> names;
  int counter = 0;
  for (int e = 0; e < n; ++e) {
    if (bottom && e == *bottom && top && e == *top) names.push_back("0=1");
    else if (bottom && e == *bottom) names.push_back("0");
    else if (top && e == *top) names.push_back("1");
    else names.push_back("e" + std::to_string(++counter));
  }
  return names;
}

// Posets generated by k points: a poset on m ≤ k points and a surjection.
bool poset_configs(int k, const ConfigVisitor& visit) {
  for (int m = 1; m <= k; ++m) {
    for (const auto& p : enumerate_structures(StructureKind::poset, m)) {
      OrderedStructure s = p;
      s.names = element_names(m, std::nullopt, std::nullopt);
      const std::size_t total = ipow(static_cast<std::size_t>(m), k);
      for (std::size_t i = 0; i < total; ++i) {
        Tuple sigma = tuple_at(i, m, k);
        std::uint32_t hit = 0;
        for (Elem x : sigma) hit |= 1u << x;
        if (hit != (1u << m) - 1) continue;
        if (!visit(s, sigma)) return false;
      }
    }
  }
  return true;
}

// Semilattices generated by k points correspond to families of nonempty
// subsets of [k] containing [k] and closed under nonempty intersections;
// element T is the join of the generators in T.
// Bit T of a family mask stands for the subset T of [k].
const std::vector<std::uint32_t>& semilattice_families(int k) {
  static std::mutex mu;
  static std::map<int, std::vector<std::uint32_t>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  const int subsets = 1 << k;
  std::vector<std::uint32_t> order;
  for (std::uint32_t s = 1; s + 1 < static_cast<std::uint32_t>(subsets); ++s) order.push_back(s);
  std::stable_sort(order.begin(), order.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) != std::popcount(b) ? std::popcount(a) > std::popcount(b) : a < b;
  });
  const std::uint32_t full = static_cast<std::uint32_t>(subsets - 1);
  std::vector<std::uint32_t> out;
  std::uint32_t family = 1u << full;
  std::uint32_t forced = 0;
  // Sets are decided largest first, so every intersection a new member
  // creates is still undecided and can be forced in.
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == order.size()) {
      out.push_back(family);
      return;
    }
    const std::uint32_t s = order[i];
    if (!(forced >> s & 1u)) rec(i + 1);
    const std::uint32_t saved = forced;
    for (std::uint32_t t = 1; t <= full; ++t)
      if ((family >> t & 1u) && (s & t) && (s & t) != s) forced |= 1u << (s & t);
    family |= 1u << s;
    rec(i + 1);
    family &= ~(1u << s);
    forced = saved;
  };
  rec(0);
  std::stable_sort(out.begin(), out.end(), [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
  return cache.emplace(k, std::move(out)).first->second;
}

// Semilattices generated by k points correspond to families of nonempty
// subsets of [k] containing [k] and closed under nonempty intersections;
// element T is the join of the generators in T. Smallest models first.
bool semilattice_configs(int k, bool dual, const ConfigVisitor& visit) {
  if (k > 5) throw BoundExceeded("semilattice families beyond five generators are not enumerated");
  const std::uint32_t full = (1u << k) - 1;
  for (std::uint32_t family : semilattice_families(k)) {
    std::vector<std::uint32_t> members;
    for (std::uint32_t t = 1; t <= full; ++t)
      if (family >> t & 1u) members.push_back(t);
    std::stable_sort(members.begin(), members.end(), [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
    const int n = static_cast<int>(members.size());
    std::vector<std::uint8_t> m(static_cast<std::size_t>(n * n), 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const std::uint32_t x = members[static_cast<std::size_t>(a)], y = members[static_cast<std::size_t>(b)];
        m[static_cast<std::size_t>(a * n + b)] = dual ? (y & x) == y : (x & y) == x;
      }
    OrderedStructure s = build_structure(FinitePoset::unchecked(n, std::move(m)),
                                         dual ? StructureKind::meet_semilattice : StructureKind::join_semilattice);
    s.names = element_names(n, std::nullopt, std::nullopt);
    Tuple sigma;
    for (int g = 0; g < k; ++g) {
      // Smallest member containing g: members are sorted by size.
      const auto it = std::find_if(members.begin(), members.end(), [&](std::uint32_t t) { return t >> g & 1u; });
      sigma.push_back(static_cast<Elem>(it - members.begin()));
    }
    if (!visit(s, sigma)) return false;
  }
  return true;
}

std::vector<std::uint32_t> by_popcount(std::uint32_t count) {
  std::vector<std::uint32_t> out(count);
  for (std::uint32_t i = 0; i < count; ++i) out[i] = i;
  std::stable_sort(out.begin(), out.end(), [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
  return out;
}

// Boolean algebras generated by k points: the powerset of the realized sign
// patterns X ⊆ {0,1}^k, generator g ↦ {p ∈ X : p_g = 1}.
bool boolean_configs(int k, const ConfigVisitor& visit) {
  const int patterns = 1 << k;
  for (std::uint32_t x : by_popcount(1u << patterns)) {
    std::vector<int> pts;
    for (int p = 0; p < patterns; ++p)
      if (x >> p & 1u) pts.push_back(p);
    OrderedStructure s = boolean_algebra(static_cast<int>(pts.size()));
    s.names = element_names(s.size(), s.bottom, s.top);
    Tuple sigma;
    for (int g = 0; g < k; ++g) {
      Elem mask = 0;
      for (std::size_t i = 0; i < pts.size(); ++i)
        if (pts[i] >> g & 1) mask |= 1 << i;
      sigma.push_back(mask);
    }
    if (!visit(s, sigma)) return false;
  }
  return true;
}

// Bounded distributive lattices generated by k points: the sublattice of
// P(X) generated by the generator sets and ∅, X.
bool distributive_configs(int k, const ConfigVisitor& visit) {
  const int patterns = 1 << k;
  for (std::uint32_t x : by_popcount(1u << patterns)) {
    std::vector<int> pts;
    for (int p = 0; p < patterns; ++p)
      if (x >> p & 1u) pts.push_back(p);
    const std::uint32_t all = pts.size() >= 32 ? ~0u : (1u << pts.size()) - 1;
    std::vector<std::uint32_t> gens;
    for (int g = 0; g < k; ++g) {
      std::uint32_t mask = 0;
      for (std::size_t i = 0; i < pts.size(); ++i)
        if (pts[i] >> g & 1) mask |= 1u << i;
      gens.push_back(mask);
    }
    std::vector<std::uint32_t> elems{0, all};
    for (auto g : gens) elems.push_back(g);
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    for (bool grew = true; grew;) {
      grew = false;
      const std::size_t n = elems.size();
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::uint32_t c : {elems[a] | elems[b], elems[a] & elems[b]})
            if (!std::binary_search(elems.begin(), elems.begin() + static_cast<std::ptrdiff_t>(n), c) &&
                std::find(elems.begin() + static_cast<std::ptrdiff_t>(n), elems.end(), c) == elems.end()) {
              elems.push_back(c);
              grew = true;
            }
      std::sort(elems.begin(), elems.end());
    }
    std::stable_sort(elems.begin(), elems.end(), [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
    const int n = static_cast<int>(elems.size());
    std::vector<std::uint8_t> m(static_cast<std::size_t>(n * n), 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        m[static_cast<std::size_t>(a * n + b)] = (elems[static_cast<std::size_t>(a)] & elems[static_cast<std::size_t>(b)]) == elems[static_cast<std::size_t>(a)];
    OrderedStructure s = build_structure(FinitePoset::unchecked(n, std::move(m)), StructureKind::distributive_lattice);
    s.names = element_names(n, s.bottom, s.top);
    Tuple sigma;
    for (auto g : gens) sigma.push_back(static_cast<Elem>(std::find(elems.begin(), elems.end(), g) - elems.begin()));
    if (!visit(s, sigma)) return false;
  }
  return true;
}

// Every distributive lattice of size ≤ 8 under every assignment.
bool bounded_distributive_configs(int k, const ConfigVisitor& visit) {
  for (int size = 1; size <= kEnumerationCap; ++size)
    for (const auto& d : enumerate_structures(StructureKind::distributive_lattice, size)) {
      OrderedStructure s = d;
      s.names = element_names(s.size(), s.bottom, s.top);
      const std::size_t total = ipow(static_cast<std::size_t>(size), k);
      for (std::size_t i = 0; i < total; ++i)
        if (!visit(s, tuple_at(i, size, k))) return false;
    }
  return true;
}

void require_supported(const TheoryProfile& profile) {
  switch (profile.kind) {
    case StructureKind::poset:
    case StructureKind::join_semilattice:
    case StructureKind::meet_semilattice:
    case StructureKind::distributive_lattice:
    case StructureKind::boolean_algebra: break;
    default:
      throw InputError("universal consequences are decided for posets, semilattices, distributive lattices and Boolean algebras only");
  }
  if (!profile.comparabilities.empty()) throw InputError("comparability constraints are not supported by decide");
  for (const auto& [name, w] : profile.ops)
    if (w.kind == PropertyCase::C3 && !implies(profile.kind, StructureKind::lattice))
      throw InputError("C3 operations need lattice-ordered theories");
}

OrderedStructure lattice_ordered(const OrderedStructure& m, StructureKind kind) {
  if (implies(kind, StructureKind::bounded_lattice)) return m;
  Completion c = macneille_completion(m);
  OrderedStructure e = build_structure(c.lattice.poset, kind, c.lattice.names);
  return e;
}

}  // namespace

DecisionOutcome decide_universal(const TheoryProfile& profile, const Sentence& s) {
  require_supported(profile);
  const FlatSentence flat = flatten(s);
  DecisionOutcome out;
  out.k = static_cast<int>(flat.sentence.vars.size());
  const int k = out.k;
  auto g = generator_bound(profile.kind, k);
  auto exceeded = [&](int limit) {
    if (k <= limit) return;
    throw BoundExceeded("k = " + std::to_string(k) + " exceeds the enumeration limit " + std::to_string(limit) +
                        " for " + std::string(to_string(profile.kind)) + " (models of size up to " +
                        (g ? std::to_string(*g) : std::string("an unknown bound")) + ")");
  };
  bool bounded = false;
  switch (profile.kind) {
    case StructureKind::poset: exceeded(6); break;
    case StructureKind::join_semilattice:
    case StructureKind::meet_semilattice: exceeded(5); break;
    case StructureKind::boolean_algebra: exceeded(3); break;
    case StructureKind::distributive_lattice: bounded = k > 3; break;
    default: break;
  }
  out.size_bound = bounded ? static_cast<std::size_t>(kEnumerationCap) : g.value_or(0);

  const Sentence& fs = flat.sentence;
  const auto nops = profile.ops.size();
  auto visit = [&](const OrderedStructure& m, const Tuple& sigma) {
    ++out.configurations;
    Evaluator ev(m, fs);
    if (ev.formula(flat.psi, sigma)) return true;
    std::vector<PartialOp> v(nops);
    for (std::size_t i = 0; i < nops; ++i) v[i].arity = profile.ops[i].second.arity;
    for (const auto& p : flat.premises) {
      Tuple at;
      for (const auto& a : p.args) at.push_back(ev.term(a, sigma));
      auto [it, inserted] = v[static_cast<std::size_t>(p.op)].values.emplace(at, sigma[static_cast<std::size_t>(p.var)]);
      if (!inserted && it->second != sigma[static_cast<std::size_t>(p.var)]) return true;
    }
    for (std::size_t i = 0; i < nops; ++i)
      if (!check_necessary(profile.ops[i].second, m, v[i])) return true;
    // A falsifying configuration: complete, extend and re-check.
    OrderedStructure e = lattice_ordered(m, profile.kind);
    for (std::size_t i = 0; i < nops; ++i)
      e.set_op({profile.ops[i].first, profile.ops[i].second, extend(profile.ops[i].second, e, v[i])});
    Tuple orig(sigma.begin(), sigma.begin() + flat.original_vars);
    if (evaluate_formula(e, s, s.matrix, orig)) throw Error("countermodel does not falsify the sentence");
    auto report = validate(e);
    if (!report.ok()) throw Error("countermodel fails validation: " + report.violations.front().what);
    out.verdict = Verdict3::invalid;
    out.countermodel = std::move(e);
    out.assignment = std::move(orig);
    return false;
  };
  switch (profile.kind) {
    case StructureKind::poset: poset_configs(k, visit); break;
    case StructureKind::join_semilattice: semilattice_configs(k, false, visit); break;
    case StructureKind::meet_semilattice: semilattice_configs(k, true, visit); break;
    case StructureKind::boolean_algebra: boolean_configs(k, visit); break;
    case StructureKind::distributive_lattice:
      if (bounded) bounded_distributive_configs(k, visit);
      else distributive_configs(k, visit);
      break;
    default: break;
  }
  if (out.verdict != Verdict3::invalid && bounded) out.verdict = Verdict3::valid_up_to_bound;
  return out;
}

DecisionOutcome brute_force_decide(const TheoryProfile& profile, const Sentence& s, int size_bound, double cap) {
  if (!profile.comparabilities.empty()) throw InputError("comparability constraints are not supported by decide");
  for (const auto& [name, w] : profile.ops)
    if (w.kind == PropertyCase::C3 && !implies(profile.kind, StructureKind::lattice))
      throw InputError("C3 operations need lattice-ordered theories");
  DecisionOutcome out;
  out.k = static_cast<int>(s.vars.size());
  out.size_bound = static_cast<std::size_t>(size_bound);
  out.verdict = Verdict3::valid_up_to_bound;
  for (int size = 1; size <= size_bound; ++size) {
    for (const auto& base : enumerate_structures(profile.kind, size)) {
      std::vector<std::vector<std::vector<Elem>>> tables;
      for (const auto& [name, w] : profile.ops) {
        std::vector<std::vector<Elem>> ts;
        enumerate_extensions(w, base, PartialOp{w.arity, {}}, [&](const std::vector<Elem>& t) {
          ts.push_back(t);
          if (static_cast<double>(ts.size()) > cap) throw BoundExceeded("too many operation tables for " + name);
          return true;
        });
        tables.push_back(std::move(ts));
      }
      OrderedStructure m = base;
      m.names = element_names(m.size(), m.bottom, m.top);
      std::vector<std::size_t> pick(tables.size(), 0);
      if (std::any_of(tables.begin(), tables.end(), [](const auto& t) { return t.empty(); })) continue;
      while (true) {
        ++out.configurations;
        for (std::size_t i = 0; i < tables.size(); ++i)
          m.set_op({profile.ops[i].first, profile.ops[i].second, tables[i][pick[i]]});
        auto r = evaluate(m, s);
        if (!r.holds) {
          out.verdict = Verdict3::invalid;
          out.countermodel = m;
          out.assignment = r.falsifying;
          return out;
        }
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == tables[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
    }
  }
  return out;
}

}  // namespace supamal
