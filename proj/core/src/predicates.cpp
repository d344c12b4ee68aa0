#include "fixsat/predicates.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace fixsat {

bool is_z_unique(const Formula& formula, const VarSet& z, std::size_t clause) {
  std::size_t positive_outside = 0;
  for (Lit l : formula.clause(clause)) {
    if (l.is_positive()) {
      if (!z.contains(l.var())) ++positive_outside;
    } else if (z.contains(l.var())) {
      return false;
    }
  }
  return positive_outside == 1;
}

bool is_z_safe(Var x, const Formula& formula, const VarSet& z) {
  if (z.contains(x)) throw std::invalid_argument("is_z_safe: variable " + std::to_string(x) + " is in Z");
  for (std::size_t i = 0; i < formula.num_clauses(); ++i) {
    if (!is_z_unique(formula, z, i)) continue;
    for (Lit l : formula.clause(i)) {
      if (l == Lit::positive(x)) return false;
    }
  }
  return true;
}

bool is_endangered(const Formula& formula, const VarSet& z, const VarSet& z_prime, std::size_t clause) {
  for (Lit l : formula.clause(clause)) {
    if (true_under_sigma(l, z) && !z_prime.contains(l.var())) return false;
  }
  return true;
}

bool is_zz_safe(Var x, const Formula& formula, const VarSet& z, const VarSet& z_prime) {
  if (z.contains(x) || z_prime.contains(x)) return false;
  for (std::size_t i = 0; i < formula.num_clauses(); ++i) {
    auto c = formula.clause(i);
    for (std::size_t l = 0; l < c.size(); ++l) {
      if (c[l] != Lit::positive(x)) continue;
      bool others_dead = true;
      for (std::size_t j = 0; j < c.size() && others_dead; ++j) {
        if (j != l && !is_dead(c[j], z, z_prime)) others_dead = false;
      }
      if (others_dead) return false;
    }
  }
  return true;
}

std::size_t distinct_vars_in(const Formula& formula, std::size_t clause, const VarSet& set) {
  std::vector<Var> vars;
  for (Lit l : formula.clause(clause)) {
    if (set.contains(l.var())) vars.push_back(l.var());
  }
  std::sort(vars.begin(), vars.end());
  return static_cast<std::size_t>(std::unique(vars.begin(), vars.end()) - vars.begin());
}

}  // namespace fixsat
