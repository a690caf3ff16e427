#include "supamal/canonical.hpp"

#include <algorithm>
#include <map>

namespace supamal {

namespace {

using Sig = std::vector<int>;

// Ranks signatures; the rank of a signature is an isomorphism invariant.
std::vector<int> rank_signatures(const std::vector<Sig>& sigs) {
  std::vector<Sig> distinct = sigs;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<int> out(sigs.size());
  for (std::size_t i = 0; i < sigs.size(); ++i)
    out[i] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sigs[i]) - distinct.begin());
  return out;
}

std::vector<int> refine(const OrderedStructure& s, std::span<const int> colors) {
  const int n = s.size();
  std::vector<const Operation*> unary;
  for (const auto& o : s.ops)
    if (o.arity() == 1) unary.push_back(&o);
  std::vector<Sig> sigs(static_cast<std::size_t>(n));
  for (int e = 0; e < n; ++e) {
    Sig& g = sigs[static_cast<std::size_t>(e)];
    g.push_back(colors.empty() ? 0 : colors[static_cast<std::size_t>(e)]);
    int below = 0, above = 0;
    for (int o = 0; o < n; ++o) {
      below += s.leq(o, e);
      above += s.leq(e, o);
    }
    g.push_back(below);
    g.push_back(above);
    for (const Operation* op : unary) {
      g.push_back((*op)(e) == e);
      int pre = 0;
      for (int o = 0; o < n; ++o) pre += (*op)(o) == e;
      g.push_back(pre);
    }
  }
  std::vector<int> color = rank_signatures(sigs);
  int classes = color.empty() ? 0 : *std::max_element(color.begin(), color.end()) + 1;
  for (;;) {
    for (int e = 0; e < n; ++e) {
      Sig g{color[static_cast<std::size_t>(e)]};
      std::vector<int> down, up;
      for (int o = 0; o < n; ++o) {
        if (o == e) continue;
        if (s.leq(o, e)) down.push_back(color[static_cast<std::size_t>(o)]);
        if (s.leq(e, o)) up.push_back(color[static_cast<std::size_t>(o)]);
      }
      std::sort(down.begin(), down.end());
      std::sort(up.begin(), up.end());
      g.push_back(-1);
      g.insert(g.end(), down.begin(), down.end());
      g.push_back(-2);
      g.insert(g.end(), up.begin(), up.end());
      for (const Operation* op : unary) {
        g.push_back(-3);
        g.push_back(color[static_cast<std::size_t>((*op)(e))]);
        std::vector<int> pre;
        for (int o = 0; o < n; ++o)
          if ((*op)(o) == e) pre.push_back(color[static_cast<std::size_t>(o)]);
        std::sort(pre.begin(), pre.end());
        g.insert(g.end(), pre.begin(), pre.end());
      }
      sigs[static_cast<std::size_t>(e)] = std::move(g);
    }
    std::vector<int> next = rank_signatures(sigs);
    int next_classes = next.empty() ? 0 : *std::max_element(next.begin(), next.end()) + 1;
    color = std::move(next);
    if (next_classes == classes) break;
    classes = next_classes;
  }
  return color;
}

class Search {
 public:
  Search(const OrderedStructure& s, std::vector<int> color, std::size_t cap)
      : s_(s), n_(s.size()), color_(std::move(color)), cap_(cap) {
    for (int e = 0; e < n_; ++e) by_color_[color_[static_cast<std::size_t>(e)]].push_back(e);
    for (const auto& [c, members] : by_color_)
      for (std::size_t i = 0; i < members.size(); ++i) slot_color_.push_back(c);
    pos_.assign(static_cast<std::size_t>(n_), -1);
    order_.assign(static_cast<std::size_t>(n_), -1);
    code_.reserve(static_cast<std::size_t>(n_ * n_));
  }

  void run() { dfs(0); }

  const std::string& best_code() const { return best_code_; }
  const std::string& best_ops() const { return best_ops_; }
  const std::vector<Elem>& best_labeling() const { return best_pos_; }

 private:
  void dfs(int k) {
    if (++nodes_ > cap_) throw BoundExceeded("canonical form search exceeded its node cap");
    if (k == n_) {
      leaf();
      return;
    }
    const int c = slot_color_[static_cast<std::size_t>(k)];
    for (Elem e : by_color_[c]) {
      if (pos_[static_cast<std::size_t>(e)] >= 0) continue;
      pos_[static_cast<std::size_t>(e)] = k;
      order_[static_cast<std::size_t>(k)] = e;
      const std::size_t mark = code_.size();
      for (int j = 0; j < k; ++j) {
        const Elem o = order_[static_cast<std::size_t>(j)];
        code_.push_back(s_.leq(e, o) ? '1' : '0');
        code_.push_back(s_.leq(o, e) ? '1' : '0');
      }
      // Compare the new prefix against the best code's prefix of equal length.
      int cmp = 0;
      if (have_best_) cmp = best_code_.compare(0, code_.size(), code_);
      if (!have_best_ || cmp >= 0) dfs(k + 1);
      code_.resize(mark);
      pos_[static_cast<std::size_t>(e)] = -1;
      order_[static_cast<std::size_t>(k)] = -1;
    }
  }

  void leaf() {
    std::string ops;
    for (const auto& o : s_.ops) {
      ops += o.name;
      ops += ':';
      ops += o.property.to_string();
      ops += '=';
      const std::size_t cells = o.table.size();
      for (std::size_t ci = 0; ci < cells; ++ci) {
        Tuple t = tuple_at(ci, n_, o.arity());
        for (auto& x : t) x = order_[static_cast<std::size_t>(x)];
        ops += std::to_string(pos_[static_cast<std::size_t>(o.at(t, n_))]);
        ops += ',';
      }
      ops += ';';
    }
    if (!have_best_ || code_ < best_code_ || (code_ == best_code_ && ops < best_ops_)) {
      have_best_ = true;
      best_code_ = code_;
      best_ops_ = std::move(ops);
      best_pos_ = pos_;
    }
  }

  const OrderedStructure& s_;
  int n_;
  std::vector<int> color_;
  std::size_t cap_;
  std::size_t nodes_ = 0;
  std::map<int, std::vector<Elem>> by_color_;
  std::vector<int> slot_color_;
  std::vector<Elem> pos_;
  std::vector<Elem> order_;
  std::string code_;
  bool have_best_ = false;
  std::string best_code_;
  std::string best_ops_;
  std::vector<Elem> best_pos_;
};

}  // namespace

CanonicalForm canonical_form(const OrderedStructure& s, std::span<const int> colors, std::size_t node_cap) {
  if (!colors.empty() && colors.size() != static_cast<std::size_t>(s.size()))
    throw InputError("color list has the wrong length");
  std::vector<int> color = refine(s, colors);
  Search search(s, color, node_cap);
  search.run();
  CanonicalForm f;
  f.labeling = search.best_labeling();
  f.signature = std::string(to_string(s.kind)) + "|" + std::to_string(s.size()) + "|";
  if (!colors.empty()) {
    std::vector<int> by_pos(static_cast<std::size_t>(s.size()));
    for (int e = 0; e < s.size(); ++e) by_pos[static_cast<std::size_t>(f.labeling[static_cast<std::size_t>(e)])] = colors[static_cast<std::size_t>(e)];
    for (int c : by_pos) f.signature += std::to_string(c) + ",";
    f.signature += "|";
  }
  f.signature += search.best_code();
  f.signature += "|" + search.best_ops();
  auto comps = s.comparabilities;
  std::sort(comps.begin(), comps.end());
  for (const auto& c : comps) f.signature += "|" + c.lower + "<=" + c.upper;
  return f;
}

OrderedStructure canonical_structure(const OrderedStructure& s) {
  return permute(s, canonical_form(s).labeling);
}

bool isomorphic(const OrderedStructure& a, const OrderedStructure& b) {
  if (a.size() != b.size() || a.kind != b.kind) return false;
  return canonical_form(a).signature == canonical_form(b).signature;
}

}  // namespace supamal
