#include "fixsat/formula.hpp"

#include <algorithm>
#include <unordered_map>

namespace fixsat {

Formula::Formula(std::uint32_t num_vars, std::uint32_t width, std::vector<Lit> literals)
    : num_vars_(num_vars), width_(width), literals_(std::move(literals)) {
  if (width_ > kMaxWidth) {
    throw FormulaError("clause width " + std::to_string(width_) + " exceeds the supported maximum of " +
                       std::to_string(kMaxWidth));
  }
  if (width_ == 0) {
    if (!literals_.empty()) throw FormulaError("clause width 0 with non-empty literal list");
    num_clauses_ = 0;
  } else {
    if (literals_.size() % width_ != 0) {
      throw FormulaError("literal count " + std::to_string(literals_.size()) +
                         " is not a multiple of the clause width " + std::to_string(width_));
    }
    num_clauses_ = literals_.size() / width_;
  }
  if (num_clauses_ >= kMaxClauses) throw FormulaError("too many clauses");
  for (Lit l : literals_) {
    if (l.dimacs() == 0 || l.var() > num_vars_) {
      throw FormulaError("literal " + std::to_string(l.dimacs()) + " out of range for " +
                         std::to_string(num_vars_) + " variables");
    }
  }
  build_occurrences();
}

void Formula::build_occurrences() {
  occ_begin_.assign(std::size_t{num_vars_} + 2, 0);
  for (Lit l : literals_) ++occ_begin_[l.var() + 1];
  for (std::size_t v = 1; v < occ_begin_.size(); ++v) occ_begin_[v] += occ_begin_[v - 1];

  occurrences_.resize(literals_.size());
  std::vector<std::size_t> cursor(occ_begin_.begin(), occ_begin_.end() - 1);
  for (std::size_t i = 0; i < num_clauses_; ++i) {
    for (Lit l : clause(i)) {
      occurrences_[cursor[l.var()]++] = Occurrence(static_cast<std::uint32_t>(i), l.is_negative());
    }
  }
}

bool clause_satisfied(std::span<const Lit> clause, const Assignment& assignment) {
  return std::any_of(clause.begin(), clause.end(), [&](Lit l) { return assignment.satisfies(l); });
}

bool evaluate(const Formula& formula, const Assignment& assignment) {
  for (std::size_t i = 0; i < formula.num_clauses(); ++i) {
    if (!clause_satisfied(formula.clause(i), assignment)) return false;
  }
  return true;
}

std::vector<std::size_t> unsatisfied_indices(const Formula& formula, const Assignment& assignment) {
  std::vector<std::size_t> result;
  for (std::size_t i = 0; i < formula.num_clauses(); ++i) {
    if (!clause_satisfied(formula.clause(i), assignment)) result.push_back(i);
  }
  return result;
}

std::uint64_t assignment_hash(const Assignment& assignment) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Var v = 1; v <= assignment.num_vars(); ++v) {
    h ^= assignment.value(v) ? 1u : 0u;
    h *= 0x100000001b3ULL;
  }
  return h;
}

DuplicateStats duplicate_stats(const Formula& formula) {
  DuplicateStats stats;
  const std::size_t k = formula.width();

  // Each clause contributes the set of variable pairs found at two distinct
  // positions. A pair shared by two different clauses marks both.
  std::unordered_map<std::uint64_t, std::uint32_t> pair_owner;
  constexpr std::uint32_t kShared = ~std::uint32_t{0};
  std::vector<std::uint64_t> keys;
  for (std::size_t i = 0; i < formula.num_clauses(); ++i) {
    auto c = formula.clause(i);
    keys.clear();
    bool repeated = false;
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        Var x = c[a].var(), y = c[b].var();
        if (x == y) repeated = true;
        if (x > y) std::swap(x, y);
        keys.push_back((std::uint64_t{x} << 32) | y);
      }
    }
    if (repeated) ++stats.repeat_var_clauses;
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (auto key : keys) {
      auto [it, inserted] = pair_owner.emplace(key, static_cast<std::uint32_t>(i));
      if (!inserted && it->second != i) it->second = kShared;
    }
  }

  std::vector<std::uint8_t> shared(formula.num_clauses(), 0);
  for (std::size_t i = 0; i < formula.num_clauses(); ++i) {
    auto c = formula.clause(i);
    for (std::size_t a = 0; a < k && !shared[i]; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        Var x = c[a].var(), y = c[b].var();
        if (x > y) std::swap(x, y);
        if (pair_owner[(std::uint64_t{x} << 32) | y] == kShared) {
          shared[i] = 1;
          break;
        }
      }
    }
  }
  stats.shared_pair_clauses = static_cast<std::size_t>(std::count(shared.begin(), shared.end(), 1));

  for (Var v = 1; v <= formula.num_vars(); ++v) {
    std::size_t degree = 0;
    std::uint32_t last = ~std::uint32_t{0};
    for (auto occ : formula.occurrences(v)) {
      if (occ.clause() != last) ++degree;
      last = occ.clause();
    }
    stats.max_var_degree = std::max(stats.max_var_degree, degree);
  }
  return stats;
}

}  // namespace fixsat
