#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "fixsat/formula.hpp"
#include "fixsat/var_set.hpp"

namespace fixsat::test {

/// Formula from DIMACS-style signed integers, one initializer list per clause.
inline Formula make_formula(std::uint32_t n, std::initializer_list<std::initializer_list<int>> clauses) {
  std::vector<Lit> lits;
  std::uint32_t width = 0;
  for (auto c : clauses) {
    width = static_cast<std::uint32_t>(c.size());
    for (int l : c) lits.push_back(Lit(l));
  }
  return Formula(n, width, std::move(lits));
}

inline std::vector<Var> order_of(const VarSet& set) { return {set.order().begin(), set.order().end()}; }

inline Assignment all_true(std::uint32_t n) { return Assignment(n, true); }

}  // namespace fixsat::test
