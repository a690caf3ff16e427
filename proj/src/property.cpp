#include "supamal/property.hpp"

#include <array>
#include <cctype>
#include <charconv>

namespace supamal {

namespace {

constexpr std::array<std::string_view, 16> kCaseNames = {
    "A1e", "A1c", "A2", "A2e", "A2c", "A3", "B1", "B1e", "B1c", "B2", "B3", "B4", "B5", "C1", "C2", "C3"};

class TermParser {
 public:
  explicit TermParser(std::string_view s) : s_(s) {}

  LatticeTerm parse() {
    LatticeTerm t = parse_join();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  LatticeTerm parse_join() {
    LatticeTerm t = parse_meet();
    for (;;) {
      skip();
      if (eat("\\/") || eat_word('v')) {
        t = LatticeTerm::join(t, parse_meet());
      } else {
        return t;
      }
    }
  }

  LatticeTerm parse_meet() {
    LatticeTerm t = parse_atom();
    for (;;) {
      skip();
      if (eat("/\\") || eat("^")) {
        t = LatticeTerm::meet(t, parse_atom());
      } else {
        return t;
      }
    }
  }

  LatticeTerm parse_atom() {
    skip();
    if (eat("(")) {
      LatticeTerm t = parse_join();
      skip();
      if (!eat(")")) fail("expected ')'");
      return t;
    }
    if (pos_ < s_.size() && s_[pos_] == 'x') {
      ++pos_;
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      int idx = 0;
      auto res = std::from_chars(s_.data() + start, s_.data() + pos_, idx);
      if (start == pos_ || res.ec != std::errc() || idx < 1) fail("expected variable x1, x2, ...");
      return LatticeTerm::variable(idx - 1);
    }
    fail("expected a variable or '('");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(std::string_view tok) {
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  // `v` as a join symbol only when it stands alone.
  bool eat_word(char c) {
    if (pos_ < s_.size() && s_[pos_] == c &&
        (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("lattice term: " + msg + " at position " + std::to_string(pos_));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

int parse_int(std::string_view v, std::string_view field) {
  int out = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw InputError("property field '" + std::string(field) + "' expects an integer, got '" + std::string(v) + "'");
  return out;
}

}  // namespace

LatticeTerm LatticeTerm::variable(int index) {
  LatticeTerm t;
  t.nodes_.push_back({Op::var, index, -1, -1});
  t.root_ = 0;
  return t;
}

int LatticeTerm::append(const LatticeTerm& other) {
  const int offset = static_cast<int>(nodes_.size());
  for (Node n : other.nodes_) {
    if (n.op != Op::var) {
      n.left += offset;
      n.right += offset;
    }
    nodes_.push_back(n);
  }
  return other.root_ + offset;
}

LatticeTerm LatticeTerm::join(const LatticeTerm& a, const LatticeTerm& b) {
  LatticeTerm t;
  int l = t.append(a);
  int r = t.append(b);
  t.nodes_.push_back({Op::join, -1, l, r});
  t.root_ = static_cast<int>(t.nodes_.size()) - 1;
  return t;
}

LatticeTerm LatticeTerm::meet(const LatticeTerm& a, const LatticeTerm& b) {
  LatticeTerm t;
  int l = t.append(a);
  int r = t.append(b);
  t.nodes_.push_back({Op::meet, -1, l, r});
  t.root_ = static_cast<int>(t.nodes_.size()) - 1;
  return t;
}

LatticeTerm LatticeTerm::parse(std::string_view text) { return TermParser(text).parse(); }

int LatticeTerm::arity() const {
  int a = 0;
  for (const Node& n : nodes_)
    if (n.op == Op::var) a = std::max(a, n.var + 1);
  return a;
}

std::string LatticeTerm::node_string(int i) const {
  const Node& n = nodes_[static_cast<std::size_t>(i)];
  switch (n.op) {
    case Op::var: return "x" + std::to_string(n.var + 1);
    case Op::join: return "(" + node_string(n.left) + " \\/ " + node_string(n.right) + ")";
    case Op::meet: return "(" + node_string(n.left) + " /\\ " + node_string(n.right) + ")";
  }
  return {};
}

std::string LatticeTerm::to_string() const { return root_ < 0 ? std::string() : node_string(root_); }

std::string_view to_string(PropertyCase c) { return kCaseNames[static_cast<std::size_t>(c)]; }

std::optional<PropertyCase> property_case_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kCaseNames.size(); ++i)
    if (kCaseNames[i] == s) return static_cast<PropertyCase>(i);
  return std::nullopt;
}

bool is_c_case(PropertyCase c) {
  return c == PropertyCase::C1 || c == PropertyCase::C2 || c == PropertyCase::C3;
}

bool is_b_case(PropertyCase c) { return c >= PropertyCase::B1 && c <= PropertyCase::B5; }

PropertySpec PropertySpec::unary(PropertyCase c) {
  PropertySpec p;
  p.kind = c;
  p.arity = 1;
  if (is_c_case(c)) p.isotone = 1;
  return p;
}

PropertySpec PropertySpec::c1(int n, int i, int j) {
  PropertySpec p;
  p.kind = PropertyCase::C1;
  p.arity = n;
  p.isotone = i;
  p.antitone = j;
  p.check();
  return p;
}

PropertySpec PropertySpec::c2(int n, int i, int j, std::vector<int> bounded) {
  PropertySpec p = c1(n, i, j);
  p.kind = PropertyCase::C2;
  p.bounded = std::move(bounded);
  p.check();
  return p;
}

PropertySpec PropertySpec::c3(int n, int i, int j, LatticeTerm t) {
  PropertySpec p = c1(n, i, j);
  p.kind = PropertyCase::C3;
  p.term = std::move(t);
  p.check();
  return p;
}

void PropertySpec::check() const {
  if (!is_c_case(kind)) {
    if (arity != 1) throw InputError("property " + std::string(supamal::to_string(kind)) + " is unary");
    return;
  }
  if (arity < 1) throw InputError("C-case arity must be at least 1");
  if (isotone < 0 || antitone < 0 || isotone + antitone > arity)
    throw InputError("C-case needs i + j <= n");
  if (kind == PropertyCase::C2) {
    if (isotone < 1) throw InputError("C2 needs i >= 1");
    if (bounded.empty()) throw InputError("C2 needs a nonempty bounded variable set");
    for (int h : bounded)
      if (h < 0 || h >= isotone) throw InputError("C2 bounded variables must be among the first i");
  }
  if (kind == PropertyCase::C3) {
    if (!term) throw InputError("C3 needs a lattice term");
    if (term->arity() > isotone) throw InputError("C3 term uses a variable beyond x_i");
  }
}

PropertySpec PropertySpec::parse(std::string_view text) {
  auto colon = text.find(':');
  std::string_view head = text.substr(0, colon);
  auto c = property_case_from_string(head);
  if (!c) throw InputError("unknown property '" + std::string(text) + "'");
  if (!is_c_case(*c)) {
    if (colon != std::string_view::npos) throw InputError("property " + std::string(head) + " takes no parameters");
    return unary(*c);
  }
  PropertySpec p;
  p.kind = *c;
  p.arity = -1;
  p.isotone = -1;
  p.antitone = -1;
  std::string_view rest = colon == std::string_view::npos ? std::string_view() : text.substr(colon + 1);
  while (!rest.empty()) {
    auto eq = rest.find('=');
    if (eq == std::string_view::npos) throw InputError("malformed property parameters in '" + std::string(text) + "'");
    std::string_view key = rest.substr(0, eq);
    while (!key.empty() && key.front() == ' ') key.remove_prefix(1);
    std::string_view value;
    if (key == "t") {
      value = rest.substr(eq + 1);
      rest = {};
    } else {
      auto comma = rest.find(',', eq);
      value = rest.substr(eq + 1, comma == std::string_view::npos ? std::string_view::npos : comma - eq - 1);
      rest = comma == std::string_view::npos ? std::string_view() : rest.substr(comma + 1);
    }
    if (key == "n") {
      p.arity = parse_int(value, key);
    } else if (key == "i") {
      p.isotone = parse_int(value, key);
    } else if (key == "j") {
      p.antitone = parse_int(value, key);
    } else if (key == "bounded") {
      std::size_t start = 0;
      while (start <= value.size()) {
        auto plus = value.find('+', start);
        auto part = value.substr(start, plus == std::string_view::npos ? std::string_view::npos : plus - start);
        p.bounded.push_back(parse_int(part, key) - 1);
        if (plus == std::string_view::npos) break;
        start = plus + 1;
      }
    } else if (key == "t") {
      p.term = LatticeTerm::parse(value);
    } else {
      throw InputError("unknown property field '" + std::string(key) + "'");
    }
  }
  if (p.arity < 0 || p.isotone < 0 || p.antitone < 0)
    throw InputError("C-case property needs i, j and n: '" + std::string(text) + "'");
  p.check();
  return p;
}

std::string PropertySpec::to_string() const {
  std::string out(supamal::to_string(kind));
  if (!is_c_case(kind)) return out;
  out += ":i=" + std::to_string(isotone) + ",j=" + std::to_string(antitone) + ",n=" + std::to_string(arity);
  if (kind == PropertyCase::C2) {
    out += ",bounded=";
    for (std::size_t k = 0; k < bounded.size(); ++k) {
      if (k) out += '+';
      out += std::to_string(bounded[k] + 1);
    }
  }
  if (kind == PropertyCase::C3 && term) out += ",t=" + term->to_string();
  return out;
}

}  // namespace supamal
