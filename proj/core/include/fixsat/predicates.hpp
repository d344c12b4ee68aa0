#pragma once

#include <cstddef>

#include "fixsat/formula.hpp"
#include "fixsat/var_set.hpp"

namespace fixsat {

// Direct scans of the clause-level definitions used by Fix. The solver keeps
// incremental counters instead; these are the reference they must agree with.

/// True under sigma_Z, the assignment with Z false and every other variable true.
inline bool true_under_sigma(Lit l, const VarSet& z) { return l.is_negative() == z.contains(l.var()); }

/// Exactly one positive occurrence with variable outside Z (counted per
/// position) and no negative literal whose variable is in Z.
bool is_z_unique(const Formula& formula, const VarSet& z, std::size_t clause);

/// x (not in Z) occurs positively in no Z-unique clause. Throws
/// std::invalid_argument if x is in Z.
bool is_z_safe(Var x, const Formula& formula, const VarSet& z);

/// No literal of the clause is true under sigma_Z with its variable outside Z'.
bool is_endangered(const Formula& formula, const VarSet& z, const VarSet& z_prime, std::size_t clause);

/// Literal counts as dead for (Z,Z')-safety: positive with variable in Z or
/// Z', or negative with variable outside Z.
inline bool is_dead(Lit l, const VarSet& z, const VarSet& z_prime) {
  return l.is_positive() ? (z.contains(l.var()) || z_prime.contains(l.var())) : !z.contains(l.var());
}

/// x is outside Z and Z' and no clause has x positive at some position with
/// every other position dead.
bool is_zz_safe(Var x, const Formula& formula, const VarSet& z, const VarSet& z_prime);

/// Number of distinct variables of the clause that lie in the set.
std::size_t distinct_vars_in(const Formula& formula, std::size_t clause, const VarSet& set);

}  // namespace fixsat
