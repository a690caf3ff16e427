#include "supamal/poset.hpp"

#include <string>

namespace supamal {

namespace {

std::size_t cell(int size, Elem a, Elem b) {
  return static_cast<std::size_t>(a) * static_cast<std::size_t>(size) + static_cast<std::size_t>(b);
}

}  // namespace

void transitive_closure(std::vector<std::uint8_t>& m, int size) {
  for (int k = 0; k < size; ++k)
    for (int i = 0; i < size; ++i) {
      if (!m[cell(size, i, k)]) continue;
      for (int j = 0; j < size; ++j)
        if (m[cell(size, k, j)]) m[cell(size, i, j)] = 1;
    }
}

FinitePoset FinitePoset::from_pairs(int size, std::span<const std::pair<Elem, Elem>> pairs) {
  if (size < 0) throw InputError("poset size must be non-negative");
  std::vector<std::uint8_t> m(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 0);
  for (int i = 0; i < size; ++i) m[cell(size, i, i)] = 1;
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= size || b >= size)
      throw InputError("order pair refers to an element outside the carrier");
    m[cell(size, a, b)] = 1;
  }
  transitive_closure(m, size);
  for (int a = 0; a < size; ++a)
    for (int b = a + 1; b < size; ++b)
      if (m[cell(size, a, b)] && m[cell(size, b, a)])
        throw InputError("antisymmetry violated by elements " + std::to_string(a) + " and " +
                             std::to_string(b),
                         {a, b});
  return FinitePoset(size, std::move(m));
}

FinitePoset FinitePoset::from_matrix(int size, std::vector<std::uint8_t> leq) {
  if (size < 0 || leq.size() != static_cast<std::size_t>(size) * static_cast<std::size_t>(size))
    throw InputError("relation matrix has the wrong shape");
  FinitePoset p(size, std::move(leq));
  auto d = p.defects();
  if (!d.empty()) throw InputError("relation matrix is not a partial order", d.front().witnesses);
  return p;
}

FinitePoset FinitePoset::unchecked(int size, std::vector<std::uint8_t> leq) {
  return FinitePoset(size, std::move(leq));
}

FinitePoset FinitePoset::chain(int size) {
  std::vector<std::uint8_t> m(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 0);
  for (int a = 0; a < size; ++a)
    for (int b = a; b < size; ++b) m[cell(size, a, b)] = 1;
  return FinitePoset(size, std::move(m));
}

FinitePoset FinitePoset::antichain(int size) {
  std::vector<std::uint8_t> m(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 0);
  for (int a = 0; a < size; ++a) m[cell(size, a, a)] = 1;
  return FinitePoset(size, std::move(m));
}

std::vector<FinitePoset::Defect> FinitePoset::defects() const {
  std::vector<Defect> out;
  for (int a = 0; a < size_; ++a)
    if (!leq(a, a)) out.push_back({Defect::Kind::reflexivity, {a}});
  for (int a = 0; a < size_; ++a)
    for (int b = a + 1; b < size_; ++b)
      if (leq(a, b) && leq(b, a)) out.push_back({Defect::Kind::antisymmetry, {a, b}});
  for (int a = 0; a < size_; ++a)
    for (int b = 0; b < size_; ++b) {
      if (!leq(a, b)) continue;
      for (int c = 0; c < size_; ++c)
        if (leq(b, c) && !leq(a, c)) {
          out.push_back({Defect::Kind::transitivity, {a, b, c}});
          return out;
        }
    }
  return out;
}

FinitePoset FinitePoset::induced(std::span<const Elem> elems) const {
  const int n = static_cast<int>(elems.size());
  std::vector<std::uint8_t> m(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[cell(n, i, j)] = leq(elems[static_cast<std::size_t>(i)], elems[static_cast<std::size_t>(j)]);
  return FinitePoset(n, std::move(m));
}

FinitePoset FinitePoset::dual() const {
  std::vector<std::uint8_t> m(leq_.size(), 0);
  for (int a = 0; a < size_; ++a)
    for (int b = 0; b < size_; ++b) m[cell(size_, a, b)] = leq(b, a);
  return FinitePoset(size_, std::move(m));
}

FinitePoset FinitePoset::permuted(std::span<const Elem> perm) const {
  std::vector<std::uint8_t> m(leq_.size(), 0);
  for (int a = 0; a < size_; ++a)
    for (int b = 0; b < size_; ++b)
      m[cell(size_, perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)])] = leq(a, b);
  return FinitePoset(size_, std::move(m));
}

std::vector<Elem> FinitePoset::lower_covers(Elem x) const {
  std::vector<Elem> out;
  for (int y = 0; y < size_; ++y) {
    if (!less(y, x)) continue;
    bool cover = true;
    for (int z = 0; z < size_ && cover; ++z)
      if (less(y, z) && less(z, x)) cover = false;
    if (cover) out.push_back(y);
  }
  return out;
}

std::vector<Elem> FinitePoset::upper_covers(Elem x) const {
  std::vector<Elem> out;
  for (int y = 0; y < size_; ++y) {
    if (!less(x, y)) continue;
    bool cover = true;
    for (int z = 0; z < size_ && cover; ++z)
      if (less(x, z) && less(z, y)) cover = false;
    if (cover) out.push_back(y);
  }
  return out;
}

std::vector<std::vector<Elem>> FinitePoset::all_upper_covers() const {
  const std::size_t words = static_cast<std::size_t>((size_ + 63) / 64);
  std::vector<std::vector<std::uint64_t>> up(static_cast<std::size_t>(size_), std::vector<std::uint64_t>(words, 0));
  std::vector<std::vector<std::uint64_t>> down = up;
  for (int a = 0; a < size_; ++a)
    for (int b = 0; b < size_; ++b)
      if (less(a, b)) {
        up[static_cast<std::size_t>(a)][static_cast<std::size_t>(b / 64)] |= std::uint64_t{1} << (b % 64);
        down[static_cast<std::size_t>(b)][static_cast<std::size_t>(a / 64)] |= std::uint64_t{1} << (a % 64);
      }
  std::vector<std::vector<Elem>> out(static_cast<std::size_t>(size_));
  for (int a = 0; a < size_; ++a)
    for (int b = 0; b < size_; ++b) {
      if (!less(a, b)) continue;
      bool cover = true;
      for (std::size_t w = 0; w < words && cover; ++w)
        cover = (up[static_cast<std::size_t>(a)][w] & down[static_cast<std::size_t>(b)][w]) == 0;
      if (cover) out[static_cast<std::size_t>(a)].push_back(b);
    }
  return out;
}

std::vector<Elem> FinitePoset::minimal_elements() const {
  std::vector<Elem> out;
  for (int x = 0; x < size_; ++x) {
    bool minimal = true;
    for (int y = 0; y < size_ && minimal; ++y)
      if (less(y, x)) minimal = false;
    if (minimal) out.push_back(x);
  }
  return out;
}

std::vector<Elem> FinitePoset::maximal_elements() const {
  std::vector<Elem> out;
  for (int x = 0; x < size_; ++x) {
    bool maximal = true;
    for (int y = 0; y < size_ && maximal; ++y)
      if (less(x, y)) maximal = false;
    if (maximal) out.push_back(x);
  }
  return out;
}

}  // namespace supamal
