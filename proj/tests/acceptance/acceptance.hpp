#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/oracles.hpp"
#include "supamal/structure.hpp"

namespace acceptance {

struct Result {
  bool pass = true;
  std::string detail;
};

// Collects failures; keeps the first few messages.
class Tally {
 public:
  void fail(const std::string& what) {
    ++failures_;
    if (notes_.size() < 5) notes_.push_back(what);
  }
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) fail(what);
  }
  std::size_t checks() const { return checks_; }
  Result result(const std::string& summary) const {
    std::ostringstream os;
    os << summary;
    if (failures_) {
      os << "; " << failures_ << " failure(s):";
      for (const auto& n : notes_) os << " [" << n << "]";
    }
    return {failures_ == 0, os.str()};
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::vector<std::string> notes_;
};

std::mt19937& rng();

inline oracle::Matrix matrix_of(const supamal::OrderedStructure& s) {
  const int n = s.size();
  oracle::Matrix m(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = s.leq(i, j);
  return m;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }
inline bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng()); }

Result extension_condition();    // 1
Result fixtures();               // 2
Result superamalgamation();      // 3
Result expanded_amalgamation();  // 4
Result free_algebra_sizes();     // 5
Result decision_procedure();     // 6
Result fraisse_stages();         // 7
Result completions();            // 8

}  // namespace acceptance
