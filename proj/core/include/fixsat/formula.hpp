#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixsat {

/// Variable index in [1..n]. Index 0 is never a valid variable.
using Var = std::uint32_t;

/// Signed literal in DIMACS encoding: +v is x_v, -v is the negation of x_v.
class Lit {
public:
  constexpr Lit() = default;
  constexpr explicit Lit(std::int32_t dimacs) : code_(dimacs) {}

  static constexpr Lit positive(Var v) { return Lit(static_cast<std::int32_t>(v)); }
  static constexpr Lit negative(Var v) { return Lit(-static_cast<std::int32_t>(v)); }

  constexpr Var var() const { return static_cast<Var>(code_ < 0 ? -code_ : code_); }
  constexpr bool is_negative() const { return code_ < 0; }
  constexpr bool is_positive() const { return code_ > 0; }
  constexpr std::int32_t dimacs() const { return code_; }
  constexpr Lit operator~() const { return Lit(-code_); }

  friend constexpr bool operator==(Lit, Lit) = default;

private:
  std::int32_t code_ = 0;
};

/// One occurrence of a variable: the clause it sits in and its sign there.
/// A variable repeated inside a clause has one occurrence per position.
class Occurrence {
public:
  constexpr Occurrence() = default;
  constexpr Occurrence(std::uint32_t clause, bool negative)
      : packed_((clause << 1) | (negative ? 1u : 0u)) {}

  constexpr std::uint32_t clause() const { return packed_ >> 1; }
  constexpr bool is_negative() const { return (packed_ & 1u) != 0; }

private:
  std::uint32_t packed_ = 0;
};

class FormulaError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A k-uniform CNF formula: m ordered clauses, each an ordered k-tuple of
/// literals over variables 1..n. Repeated literals and repeated clauses are
/// allowed. Clause indices are 0-based.
///
/// Literals are kept in one flat array of length k*m; per-variable occurrence
/// lists are built once at construction. Instances are immutable.
class Formula {
public:
  /// Largest clause width accepted. Per-clause counters in the solvers are
  /// single bytes.
  static constexpr std::uint32_t kMaxWidth = 255;
  /// Occurrence entries pack the clause index into 31 bits.
  static constexpr std::size_t kMaxClauses = std::size_t{1} << 31;

  Formula() = default;

  /// Throws FormulaError if literals.size() is not a multiple of width, a
  /// literal is 0 or outside [-n..n], or width is 0 while clauses are present.
  Formula(std::uint32_t num_vars, std::uint32_t width, std::vector<Lit> literals);

  std::uint32_t num_vars() const { return num_vars_; }
  std::uint32_t width() const { return width_; }
  std::size_t num_clauses() const { return num_clauses_; }

  std::span<const Lit> clause(std::size_t i) const {
    return {literals_.data() + i * width_, width_};
  }
  Lit literal(std::size_t i, std::size_t j) const { return literals_[i * width_ + j]; }
  std::span<const Lit> literals() const { return literals_; }

  /// Occurrences of v in ascending clause order.
  std::span<const Occurrence> occurrences(Var v) const {
    return {occurrences_.data() + occ_begin_[v], occ_begin_[v + 1] - occ_begin_[v]};
  }

  friend bool operator==(const Formula& a, const Formula& b) {
    return a.num_vars_ == b.num_vars_ && a.width_ == b.width_ && a.literals_ == b.literals_;
  }

private:
  void build_occurrences();

  std::uint32_t num_vars_ = 0;
  std::uint32_t width_ = 0;
  std::size_t num_clauses_ = 0;
  std::vector<Lit> literals_;
  std::vector<std::size_t> occ_begin_ = {0, 0};
  std::vector<Occurrence> occurrences_;
};

/// Total truth assignment over variables 1..n.
class Assignment {
public:
  Assignment() = default;
  explicit Assignment(std::uint32_t num_vars, bool initial = true)
      : values_(std::size_t{num_vars} + 1, initial ? 1 : 0) {}

  std::uint32_t num_vars() const { return static_cast<std::uint32_t>(values_.empty() ? 0 : values_.size() - 1); }
  bool value(Var v) const { return values_[v] != 0; }
  void set(Var v, bool value) { values_[v] = value ? 1 : 0; }
  void flip(Var v) { values_[v] ^= 1; }
  bool satisfies(Lit l) const { return value(l.var()) != l.is_negative(); }

  friend bool operator==(const Assignment&, const Assignment&) = default;

private:
  std::vector<std::uint8_t> values_;
};

/// True iff every clause has at least one literal true under the assignment.
bool evaluate(const Formula& formula, const Assignment& assignment);

/// Ascending indices of the clauses the assignment leaves unsatisfied.
std::vector<std::size_t> unsatisfied_indices(const Formula& formula, const Assignment& assignment);

bool clause_satisfied(std::span<const Lit> clause, const Assignment& assignment);

/// FNV-1a over the assignment's values, used to stamp result rows.
std::uint64_t assignment_hash(const Assignment& assignment);

struct DuplicateStats {
  /// Clauses containing some variable at two or more positions.
  std::size_t repeat_var_clauses = 0;
  /// Clauses i for which another clause i' has two positions whose variables
  /// coincide with the variables at two positions of clause i.
  std::size_t shared_pair_clauses = 0;
  /// Largest number of distinct clauses any single variable occurs in.
  std::size_t max_var_degree = 0;
};

DuplicateStats duplicate_stats(const Formula& formula);

}  // namespace fixsat
