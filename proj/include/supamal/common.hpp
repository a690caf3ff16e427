#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace supamal {

/// Elements of a finite carrier are indices 0..size-1.
using Elem = int;
using Tuple = std::vector<Elem>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, std::vector<Elem> witnesses = {})
      : std::runtime_error(what), witnesses_(std::move(witnesses)) {}

  const std::vector<Elem>& witnesses() const noexcept { return witnesses_; }

 private:
  std::vector<Elem> witnesses_;
};

/// Malformed input: bad files, inconsistent tables, unknown symbols.
class InputError : public Error {
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
  using Error::Error;
};

/// An exhaustive search would exceed its configured cap.
class BoundExceeded : public Error {
  using Error::Error;
};

/// Outcome of a check: ok, or the first failure with its witnesses.
struct Verdict {
  bool ok = true;
  std::string reason;
  std::vector<Elem> witnesses;

  static Verdict pass() { return {}; }
  static Verdict fail(std::string reason, std::vector<Elem> witnesses = {}) {
    return {false, std::move(reason), std::move(witnesses)};
  }
  explicit operator bool() const noexcept { return ok; }
};

/// Row-major index of a tuple in a table over a carrier of `base` elements.
inline std::size_t tuple_index(const Tuple& t, int base) {
  std::size_t idx = 0;
  for (Elem e : t) idx = idx * static_cast<std::size_t>(base) + static_cast<std::size_t>(e);
  return idx;
}

inline Tuple tuple_at(std::size_t idx, int base, int arity) {
  Tuple t(static_cast<std::size_t>(arity));
  for (int h = arity - 1; h >= 0; --h) {
    t[static_cast<std::size_t>(h)] = static_cast<Elem>(idx % static_cast<std::size_t>(base));
    idx /= static_cast<std::size_t>(base);
  }
  return t;
}

inline std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace supamal
