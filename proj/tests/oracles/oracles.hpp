#pragma once

// Brute-force references written straight from the definitions. They share
// no code with the library: orders are plain matrices, operations plain tables.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<bool>>;
using Table = std::vector<int>;

inline Matrix transitive_closure(Matrix m) {
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (m[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (m[k][j]) m[i][j] = true;
  return m;
}

inline bool is_partial_order(const Matrix& m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!m[i][i]) return false;
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && m[i][j] && m[j][i]) return false;
      for (std::size_t k = 0; k < n; ++k)
        if (m[i][j] && m[j][k] && !m[i][k]) return false;
    }
  }
  return true;
}

/// Greatest lower bound (meet) or least upper bound of `s`; empty set allowed.
inline std::optional<int> glb(const Matrix& m, const std::vector<int>& s) {
  const int n = static_cast<int>(m.size());
  std::vector<int> lower;
  for (int x = 0; x < n; ++x)
    if (std::all_of(s.begin(), s.end(), [&](int y) { return m[x][y]; })) lower.push_back(x);
  for (int x : lower)
    if (std::all_of(lower.begin(), lower.end(), [&](int y) { return m[y][x]; })) return x;
  return std::nullopt;
}

inline std::optional<int> lub(const Matrix& m, const std::vector<int>& s) {
  const int n = static_cast<int>(m.size());
  std::vector<int> upper;
  for (int x = 0; x < n; ++x)
    if (std::all_of(s.begin(), s.end(), [&](int y) { return m[y][x]; })) upper.push_back(x);
  for (int x : upper)
    if (std::all_of(upper.begin(), upper.end(), [&](int y) { return m[x][y]; })) return x;
  return std::nullopt;
}

inline bool is_lattice(const Matrix& m) {
  const int n = static_cast<int>(m.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!glb(m, {a, b}) || !lub(m, {a, b})) return false;
  return true;
}

/// All orders on `n` points satisfying `keep`, one per isomorphism class.
inline std::vector<Matrix> orders(int n, const std::function<bool(const Matrix&)>& keep) {
  std::vector<Matrix> out;
  std::set<std::vector<bool>> seen;
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) cells.emplace_back(i, j);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cells.size()); ++bits) {
    Matrix m(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
    for (int i = 0; i < n; ++i) m[i][i] = true;
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (bits >> c & 1) m[cells[c].first][cells[c].second] = true;
    if (!is_partial_order(m) || !keep(m)) continue;
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::vector<bool> best;
    do {
      std::vector<bool> code;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) code.push_back(m[perm[i]][perm[j]]);
      if (best.empty() || code < best) best = code;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (seen.insert(best).second) out.push_back(m);
  }
  return out;
}

inline std::vector<Matrix> lattices(int n) { return orders(n, is_lattice); }

inline std::vector<Matrix> join_semilattices(int n) {
  return orders(n, [](const Matrix& m) {
    const int k = static_cast<int>(m.size());
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        if (!lub(m, {a, b})) return false;
    return true;
  });
}

// ---- unary properties, one definition each

inline bool extensive(const Matrix& m, const Table& k) {
  for (std::size_t x = 0; x < k.size(); ++x)
    if (!m[x][k[x]]) return false;
  return true;
}
inline bool contractive(const Matrix& m, const Table& k) {
  for (std::size_t x = 0; x < k.size(); ++x)
    if (!m[k[x]][x]) return false;
  return true;
}
inline bool isotone(const Matrix& m, const Table& k) {
  for (std::size_t x = 0; x < k.size(); ++x)
    for (std::size_t y = 0; y < k.size(); ++y)
      if (m[x][y] && !m[k[x]][k[y]]) return false;
  return true;
}
inline bool antitone(const Matrix& m, const Table& k) {
  for (std::size_t x = 0; x < k.size(); ++x)
    for (std::size_t y = 0; y < k.size(); ++y)
      if (m[x][y] && !m[k[y]][k[x]]) return false;
  return true;
}
inline bool idempotent(const Table& k) {
  for (std::size_t x = 0; x < k.size(); ++x)
    if (k[k[x]] != k[x]) return false;
  return true;
}
inline bool involution(const Table& k) {
  for (std::size_t x = 0; x < k.size(); ++x)
    if (k[k[x]] != static_cast<int>(x)) return false;
  return true;
}

/// Names follow the library's case labels.
inline bool has_property(const std::string& w, const Matrix& m, const Table& k) {
  if (w == "A1e") return extensive(m, k);
  if (w == "A1c") return contractive(m, k);
  if (w == "A2") return idempotent(k);
  if (w == "A2e") return idempotent(k) && extensive(m, k);
  if (w == "A2c") return idempotent(k) && contractive(m, k);
  if (w == "A3") return involution(k);
  if (w == "B1") return isotone(m, k);
  if (w == "B1e") return isotone(m, k) && extensive(m, k);
  if (w == "B1c") return isotone(m, k) && contractive(m, k);
  if (w == "B2") return isotone(m, k) && idempotent(k);
  if (w == "B3") return isotone(m, k) && idempotent(k) && extensive(m, k);
  if (w == "B4") return isotone(m, k) && idempotent(k) && contractive(m, k);
  if (w == "B5") return antitone(m, k);
  throw std::logic_error("unknown case " + w);
}

/// Calls `visit` on every total table extending `partial` (-1 = free).
inline void for_each_table(int n, const Table& partial, const std::function<void(const Table&)>& visit) {
  Table t(partial);
  std::function<void(int)> rec = [&](int x) {
    if (x == n) {
      visit(t);
      return;
    }
    if (partial[x] >= 0) {
      rec(x + 1);
      return;
    }
    for (int v = 0; v < n; ++v) {
      t[x] = v;
      rec(x + 1);
    }
    t[x] = -1;
  };
  rec(0);
}

inline bool extension_exists(const std::string& w, const Matrix& m, const Table& partial) {
  bool found = false;
  for_each_table(static_cast<int>(m.size()), partial, [&](const Table& t) {
    if (!found && has_property(w, m, t)) found = true;
  });
  return found;
}

/// Binary operation: isotone in the first `i` places, antitone in the last `j`;
/// a middle place is unconstrained.
inline bool c1(const Matrix& m, const Table& t, int i, int j) {
  const int n = static_cast<int>(m.size());
  auto at = [&](int a, int b) { return t[static_cast<std::size_t>(a * n + b)]; };
  for (int a = 0; a < n; ++a)
    for (int a2 = 0; a2 < n; ++a2)
      for (int b = 0; b < n; ++b) {
        if (!m[a][a2]) continue;
        // place p (0-based) is isotone when p < i, antitone when p >= 2 - j
        if (0 < i && !m[at(a, b)][at(a2, b)]) return false;
        if (0 >= 2 - j && !m[at(a2, b)][at(a, b)]) return false;
        if (1 < i && !m[at(b, a)][at(b, a2)]) return false;
        if (1 >= 2 - j && !m[at(b, a2)][at(b, a)]) return false;
      }
  return true;
}

}  // namespace oracle
