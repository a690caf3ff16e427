#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "supamal/structure.hpp"

namespace testkit {

using supamal::Elem;
using supamal::OrderedStructure;
using supamal::StructureKind;

// Order given by named covering pairs (lower, upper).
inline OrderedStructure named(StructureKind kind, std::vector<std::string> names,
                              std::initializer_list<std::pair<const char*, const char*>> below) {
  std::vector<std::pair<Elem, Elem>> pairs;
  auto idx = [&](const char* n) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return static_cast<Elem>(i);
    throw std::logic_error(std::string("unknown name ") + n);
  };
  for (auto [lo, hi] : below) pairs.emplace_back(idx(lo), idx(hi));
  const int n = static_cast<int>(names.size());
  return supamal::make_structure(supamal::FinitePoset::from_pairs(n, pairs), kind, std::move(names));
}

}  // namespace testkit
