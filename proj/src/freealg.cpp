#include "supamal/freealg.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <mutex>

#include "supamal/enumerate.hpp"
#include "supamal/extension.hpp"

namespace supamal {

SLCTerm SLCTerm::generator(int index) {
  SLCTerm t;
  t.nodes_.push_back({Op::gen, index, -1, -1});
  return t;
}

int SLCTerm::append(const SLCTerm& t) {
  const int offset = static_cast<int>(nodes_.size());
  for (Node n : t.nodes_) {
    if (n.left >= 0) n.left += offset;
    if (n.right >= 0) n.right += offset;
    nodes_.push_back(n);
  }
  return root();
}

SLCTerm SLCTerm::join(const SLCTerm& a, const SLCTerm& b) {
  SLCTerm t;
  const int l = t.append(a);
  const int r = t.append(b);
  t.nodes_.push_back({Op::join, -1, l, r});
  return t;
}

SLCTerm SLCTerm::closure(const SLCTerm& a) {
  SLCTerm t;
  const int l = t.append(a);
  t.nodes_.push_back({Op::closure, -1, l, -1});
  return t;
}

namespace {

class SLCParser {
 public:
  SLCParser(std::string_view text, std::vector<std::string>& gens) : text_(text), gens_(gens) {}

  SLCTerm parse() {
    SLCTerm t = join_expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("term, position " + std::to_string(pos_ + 1) + ": " + msg);
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }
  SLCTerm join_expr() {
    SLCTerm t = atom();
    while (eat("\\/")) t = SLCTerm::join(t, atom());
    return t;
  }
  SLCTerm atom() {
    skip();
    if (eat("(")) {
      SLCTerm t = join_expr();
      if (!eat(")")) fail("expected ')'");
      return t;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a generator, K(...) or '('");
    std::string name(text_.substr(start, pos_ - start));
    if (name == "K") {
      if (!eat("(")) fail("expected '(' after K");
      SLCTerm t = join_expr();
      if (!eat(")")) fail("expected ')'");
      return SLCTerm::closure(t);
    }
    auto it = std::find(gens_.begin(), gens_.end(), name);
    if (it == gens_.end()) {
      gens_.push_back(name);
      it = gens_.end() - 1;
    }
    return SLCTerm::generator(static_cast<int>(it - gens_.begin()));
  }

  std::string_view text_;
  std::vector<std::string>& gens_;
  std::size_t pos_ = 0;
};

}  // namespace

SLCTerm SLCTerm::parse(std::string_view text, std::vector<std::string>& gens) { return SLCParser(text, gens).parse(); }

int SLCTerm::generator_bound() const {
  int m = 0;
  for (const auto& n : nodes_)
    if (n.op == Op::gen) m = std::max(m, n.gen + 1);
  return m;
}

std::string SLCTerm::to_string(const std::vector<std::string>& gens) const {
  std::vector<std::string> s(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    switch (n.op) {
      case Op::gen: s[i] = gens.at(static_cast<std::size_t>(n.gen)); break;
      case Op::join: s[i] = "(" + s[static_cast<std::size_t>(n.left)] + " \\/ " + s[static_cast<std::size_t>(n.right)] + ")"; break;
      case Op::closure: {
        std::string inner = s[static_cast<std::size_t>(n.left)];
        if (inner.size() > 1 && inner.front() == '(' && nodes_[static_cast<std::size_t>(n.left)].op == Op::join)
          inner = inner.substr(1, inner.size() - 2);
        s[i] = "K(" + inner + ")";
        break;
      }
    }
  }
  return s.back();
}

std::uint32_t SLCNormalForm::support() const {
  std::uint32_t m = j;
  for (auto x : s) m |= x;
  return m;
}

namespace {

std::string mask_join(std::uint32_t m, const std::vector<std::string>& gens) {
  std::string out;
  for (std::size_t i = 0; i < gens.size() && i < 32; ++i)
    if (m >> i & 1u) out += (out.empty() ? "" : " \\/ ") + gens[i];
  return out;
}

// Restores the invariants: drop dominated K-sets, then absorbed generators.
SLCNormalForm reduce(std::uint32_t j, std::vector<std::uint32_t> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  SLCNormalForm f;
  for (auto x : s) {
    const bool dominated = std::any_of(s.begin(), s.end(), [&](std::uint32_t y) { return y != x && (x & y) == x; });
    if (!dominated) f.s.push_back(x);
  }
  std::uint32_t covered = 0;
  for (auto x : f.s) covered |= x;
  f.j = j & ~covered;
  return f;
}

}  // namespace

std::string SLCNormalForm::to_string(const std::vector<std::string>& gens) const {
  std::string out = mask_join(j, gens);
  for (auto x : s) out += (out.empty() ? "" : " \\/ ") + ("K(" + mask_join(x, gens) + ")");
  return out;
}

SLCNormalForm nf_join(const SLCNormalForm& a, const SLCNormalForm& b) {
  std::vector<std::uint32_t> s = a.s;
  s.insert(s.end(), b.s.begin(), b.s.end());
  return reduce(a.j | b.j, std::move(s));
}

// K(x_J ∨ K(S_1) ∨ ...) = K(x_J ∨ S_1 ∨ ...).
SLCNormalForm nf_closure(const SLCNormalForm& a) { return reduce(0, {a.support()}); }

SLCNormalForm normalize(const SLCTerm& t) {
  const auto& nodes = t.nodes();
  std::vector<SLCNormalForm> val(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    switch (n.op) {
      case SLCTerm::Op::gen:
        if (n.gen >= 32) throw InputError("at most 32 generators are supported");
        val[i] = reduce(1u << n.gen, {});
        break;
      case SLCTerm::Op::join: val[i] = nf_join(val[static_cast<std::size_t>(n.left)], val[static_cast<std::size_t>(n.right)]); break;
      case SLCTerm::Op::closure: val[i] = nf_closure(val[static_cast<std::size_t>(n.left)]); break;
    }
  }
  return val.back();
}

SLCTerm nf_term(const SLCNormalForm& f) {
  auto mask_term = [](std::uint32_t m) {
    std::optional<SLCTerm> t;
    for (int i = 0; i < 32; ++i)
      if (m >> i & 1u) t = t ? SLCTerm::join(*t, SLCTerm::generator(i)) : SLCTerm::generator(i);
    return *t;
  };
  std::optional<SLCTerm> t;
  if (f.j) t = mask_term(f.j);
  for (auto x : f.s) {
    SLCTerm k = SLCTerm::closure(mask_term(x));
    t = t ? SLCTerm::join(*t, k) : k;
  }
  if (!t) throw InputError("empty normal form");
  return *t;
}

bool term_equal(const SLCTerm& s, const SLCTerm& t) { return normalize(s) == normalize(t); }

std::vector<std::string> default_generator_names(int n) {
  if (n <= 3) {
    const std::vector<std::string> xyz{"x", "y", "z"};
    return {xyz.begin(), xyz.begin() + std::max(n, 0)};
  }
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

FreeAlgebra free_algebra(int n, int cap) {
  if (n < 1) throw InputError("the free algebra needs at least one generator");
  if (n > cap) throw BoundExceeded("free algebra on " + std::to_string(n) + " generators exceeds the cap of " + std::to_string(cap));
  const std::uint32_t full = (1u << n) - 1;
  // Antichains of nonempty subsets, grown in increasing mask order.
  std::vector<std::vector<std::uint32_t>> antichains{{}};
  for (std::uint32_t m = 1; m <= full; ++m) {
    const std::size_t count = antichains.size();
    for (std::size_t i = 0; i < count; ++i) {
      const auto& a = antichains[i];
      if (std::any_of(a.begin(), a.end(), [&](std::uint32_t x) { return (x & m) == x || (x & m) == m; })) continue;
      auto b = a;
      b.push_back(m);
      antichains.push_back(std::move(b));
    }
  }
  FreeAlgebra fa;
  fa.generator_names = default_generator_names(n);
  for (const auto& s : antichains) {
    std::uint32_t covered = 0;
    for (auto x : s) covered |= x;
    const std::uint32_t rest = full & ~covered;
    for (std::uint32_t j = rest;; j = (j - 1) & rest) {
      if (j || !s.empty()) fa.forms.push_back(reduce(j, s));
      if (j == 0) break;
    }
  }
  std::sort(fa.forms.begin(), fa.forms.end(), [](const SLCNormalForm& a, const SLCNormalForm& b) {
    const int pa = std::popcount(a.support()) + static_cast<int>(a.s.size());
    const int pb = std::popcount(b.support()) + static_cast<int>(b.s.size());
    return pa != pb ? pa < pb : a < b;
  });
  const int size = static_cast<int>(fa.forms.size());
  std::map<SLCNormalForm, Elem> index;
  for (int e = 0; e < size; ++e) index[fa.forms[static_cast<std::size_t>(e)]] = e;
  std::vector<std::uint8_t> m(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 0);
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b)
      m[static_cast<std::size_t>(a * size + b)] =
          nf_join(fa.forms[static_cast<std::size_t>(a)], fa.forms[static_cast<std::size_t>(b)]) == fa.forms[static_cast<std::size_t>(b)];
  std::vector<std::string> names;
  for (const auto& f : fa.forms) names.push_back(f.to_string(fa.generator_names));
  fa.algebra = make_structure(FinitePoset::from_matrix(size, std::move(m)), StructureKind::join_semilattice, std::move(names));
  std::vector<Elem> k;
  for (const auto& f : fa.forms) k.push_back(index.at(nf_closure(f)));
  fa.algebra.set_op({"K", PropertySpec::unary(PropertyCase::B3), std::move(k)});
  for (int g = 0; g < n; ++g) fa.generators.push_back(index.at(reduce(1u << g, {})));
  return fa;
}

const std::vector<OrderedStructure>& closure_models(int max_size) {
  static std::mutex mu;
  static std::map<int, std::vector<OrderedStructure>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(max_size);
  if (it != cache.end()) return it->second;
  std::vector<OrderedStructure> out;
  const auto w = PropertySpec::unary(PropertyCase::B3);
  for (int size = 1; size <= max_size; ++size)
    for (const auto& base : enumerate_structures(StructureKind::join_semilattice, size))
      enumerate_extensions(w, base, PartialOp{1, {}}, [&](const std::vector<Elem>& k) {
        OrderedStructure m = base;
        m.set_op({"K", w, k});
        out.push_back(std::move(m));
        return true;
      });
  return cache.emplace(max_size, std::move(out)).first->second;
}

std::optional<SLCCountermodel> separating_model(const SLCTerm& s, const SLCTerm& t, int gens, int max_size) {
  gens = std::max({gens, s.generator_bound(), t.generator_bound()});
  for (const auto& m : closure_models(max_size)) {
    const auto& k = m.op("K")->table;
    auto join = [&](Elem a, Elem b) { return m.join(a, b); };
    auto kf = [&](Elem a) { return k[static_cast<std::size_t>(a)]; };
    const std::size_t total = ipow(static_cast<std::size_t>(m.size()), gens);
    for (std::size_t i = 0; i < total; ++i) {
      Tuple args = tuple_at(i, m.size(), gens);
      if (s.evaluate(args, join, kf) != t.evaluate(args, join, kf)) return SLCCountermodel{m, args};
    }
  }
  return std::nullopt;
}

}  // namespace supamal
