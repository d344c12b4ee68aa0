#include "fixsat/baselines.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

#include "fixsat/rng.hpp"

namespace fixsat {
namespace {

constexpr std::uint32_t code_of(Lit l) { return (l.var() << 1) | (l.is_negative() ? 1u : 0u); }
constexpr Lit lit_of(std::uint32_t code) {
  return (code & 1u) ? Lit::negative(code >> 1) : Lit::positive(code >> 1);
}

// Unassigned-literal counts for the clauses of a formula under a growing
// partial assignment. Satisfied clauses are frozen. The XOR of the codes of
// a clause's unassigned literals names the last one when the count is 1.
class ClauseTracker {
public:
  explicit ClauseTracker(const Formula& f)
      : f_(f), values_(PartialAssignment(f.num_vars())), satisfied_(f.num_clauses(), 0),
        length_(f.num_clauses(), static_cast<std::uint8_t>(f.width())), code_xor_(f.num_clauses(), 0),
        var_slot_(std::size_t{f.num_vars()} + 1, 0) {
    for (std::size_t i = 0; i < f.num_clauses(); ++i) {
      for (Lit l : f.clause(i)) code_xor_[i] ^= code_of(l);
    }
    free_vars_.reserve(f.num_vars());
    for (Var v = 1; v <= f.num_vars(); ++v) {
      var_slot_[v] = static_cast<std::uint32_t>(free_vars_.size());
      free_vars_.push_back(v);
    }
  }

  // Hooks: on_satisfied(i, old_length), on_shortened(i, new_length).
  // Returns false if some clause lost its last unassigned literal.
  template <typename Hooks>
  bool assign(Var v, bool value, Hooks& hooks) {
    values_.set(v, value);
    const auto slot = var_slot_[v];
    free_vars_[slot] = free_vars_.back();
    var_slot_[free_vars_[slot]] = slot;
    free_vars_.pop_back();
    ++steps_;

    bool ok = true;
    for (auto occ : f_.occurrences(v)) {
      const auto i = occ.clause();
      if (satisfied_[i]) continue;
      if (occ.is_negative() != value) {
        satisfied_[i] = 1;
        ++satisfied_count_;
        hooks.on_satisfied(i, length_[i]);
      } else {
        --length_[i];
        code_xor_[i] ^= code_of(occ.is_negative() ? Lit::negative(v) : Lit::positive(v));
        if (length_[i] == 0) ok = false;
        hooks.on_shortened(i, length_[i]);
      }
    }
    return ok;
  }

  bool satisfied(std::size_t i) const { return satisfied_[i] != 0; }
  std::uint32_t length(std::size_t i) const { return length_[i]; }
  Lit last_literal(std::size_t i) const { return lit_of(code_xor_[i]); }
  bool all_satisfied() const { return satisfied_count_ == f_.num_clauses(); }
  bool all_assigned() const { return free_vars_.empty(); }
  Var random_free_var(Rng& rng) const { return free_vars_[rng.below(free_vars_.size())]; }
  bool assigned(Var v) const { return values_.assigned(v); }
  std::uint64_t steps() const { return steps_; }
  Assignment result() const { return values_.complete(true); }

private:
  const Formula& f_;
  PartialAssignment values_;
  std::vector<std::uint8_t> satisfied_;
  std::vector<std::uint8_t> length_;
  std::vector<std::uint32_t> code_xor_;
  std::vector<Var> free_vars_;
  std::vector<std::uint32_t> var_slot_;
  std::size_t satisfied_count_ = 0;
  std::uint64_t steps_ = 0;
};

BaselineResult failed(std::string reason, std::uint64_t steps) {
  BaselineResult r;
  r.failure = std::move(reason);
  r.steps = steps;
  return r;
}

BaselineResult succeeded(Assignment a, std::uint64_t steps) {
  BaselineResult r;
  r.assignment = std::move(a);
  r.steps = steps;
  return r;
}

struct UnitHooks {
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> units;
  void on_satisfied(std::uint32_t, std::uint32_t) {}
  void on_shortened(std::uint32_t i, std::uint32_t length) {
    if (length == 1) units.push(i);
  }
};

// Unsatisfied clauses shorter than k, bucketed by current length, with
// O(1) removal and uniform sampling inside a bucket.
struct ShortestHooks {
  explicit ShortestHooks(const Formula& f) : buckets(f.width()), slot(f.num_clauses(), 0) {}

  void remove(std::uint32_t i, std::uint32_t length) {
    auto& b = buckets[length];
    const auto s = slot[i];
    b[s] = b.back();
    slot[b[s]] = s;
    b.pop_back();
  }
  void insert(std::uint32_t i, std::uint32_t length) {
    slot[i] = static_cast<std::uint32_t>(buckets[length].size());
    buckets[length].push_back(i);
  }
  void on_satisfied(std::uint32_t i, std::uint32_t length) {
    if (length < buckets.size()) remove(i, length);
  }
  void on_shortened(std::uint32_t i, std::uint32_t length) {
    if (length + 1 < buckets.size()) remove(i, length + 1);
    if (length > 0) insert(i, length);
  }

  std::vector<std::vector<std::uint32_t>> buckets;
  std::vector<std::uint32_t> slot;
};

}  // namespace

std::size_t PartialAssignment::assigned_count() const {
  return static_cast<std::size_t>(std::count_if(values_.begin() + 1, values_.end(), [](auto v) { return v >= 0; }));
}

Assignment PartialAssignment::complete(bool fill) const {
  Assignment a(static_cast<std::uint32_t>(values_.size() - 1), fill);
  for (Var v = 1; v < values_.size(); ++v) {
    if (assigned(v)) a.set(v, value(v));
  }
  return a;
}

BaselineResult unit_clause_solve(const Formula& formula, std::uint64_t seed) {
  Rng rng(seed);
  ClauseTracker tracker(formula);
  UnitHooks hooks;
  if (formula.width() == 1) {
    for (std::uint32_t i = 0; i < formula.num_clauses(); ++i) hooks.units.push(i);
  }
  while (!tracker.all_satisfied() && !tracker.all_assigned()) {
    while (!hooks.units.empty() &&
           (tracker.satisfied(hooks.units.top()) || tracker.length(hooks.units.top()) != 1)) {
      hooks.units.pop();
    }
    bool ok;
    if (!hooks.units.empty()) {
      const Lit l = tracker.last_literal(hooks.units.top());
      hooks.units.pop();
      ok = tracker.assign(l.var(), l.is_positive(), hooks);
    } else {
      const Var v = tracker.random_free_var(rng);
      ok = tracker.assign(v, rng.coin(), hooks);
    }
    if (!ok) return failed("contradiction", tracker.steps());
  }
  return succeeded(tracker.result(), tracker.steps());
}

BaselineResult shortest_clause_solve(const Formula& formula, std::uint64_t seed) {
  Rng rng(seed);
  ClauseTracker tracker(formula);
  ShortestHooks hooks(formula);
  std::vector<Lit> candidates;
  while (!tracker.all_satisfied() && !tracker.all_assigned()) {
    std::size_t length = 1;
    while (length < hooks.buckets.size() && hooks.buckets[length].empty()) ++length;
    bool ok;
    if (length < hooks.buckets.size()) {
      const auto& bucket = hooks.buckets[length];
      const auto i = bucket[rng.below(bucket.size())];
      candidates.clear();
      for (Lit l : formula.clause(i)) {
        if (!tracker.assigned(l.var())) candidates.push_back(l);
      }
      const Lit l = candidates[rng.below(candidates.size())];
      ok = tracker.assign(l.var(), l.is_positive(), hooks);
    } else {
      const Var v = tracker.random_free_var(rng);
      ok = tracker.assign(v, rng.coin(), hooks);
    }
    if (!ok) return failed("contradiction", tracker.steps());
  }
  return succeeded(tracker.result(), tracker.steps());
}

std::uint64_t default_max_flips(const Formula& formula) {
  return std::max<std::uint64_t>(1, 50ULL * formula.num_vars() * formula.width());
}

BaselineResult walksat_solve(const Formula& formula, std::uint64_t seed, std::uint64_t max_flips) {
  if (max_flips == 0) throw std::invalid_argument("walksat: max_flips must be at least 1");
  Rng rng(seed);
  const auto m = formula.num_clauses();
  Assignment a(formula.num_vars());
  for (Var v = 1; v <= formula.num_vars(); ++v) a.set(v, rng.coin());

  std::vector<std::uint8_t> true_count(m, 0);
  std::vector<std::uint32_t> unsat;
  std::vector<std::uint32_t> slot(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (Lit l : formula.clause(i)) true_count[i] += a.satisfies(l) ? 1 : 0;
    if (true_count[i] == 0) {
      slot[i] = static_cast<std::uint32_t>(unsat.size());
      unsat.push_back(static_cast<std::uint32_t>(i));
    }
  }

  std::uint64_t flips = 0;
  while (!unsat.empty() && flips < max_flips) {
    const auto i = unsat[rng.below(unsat.size())];
    const Var v = formula.literal(i, rng.below(formula.width())).var();
    a.flip(v);
    ++flips;
    const bool value = a.value(v);
    for (auto occ : formula.occurrences(v)) {
      const auto c = occ.clause();
      if (occ.is_negative() != value) {
        if (true_count[c]++ == 0) {
          const auto s = slot[c];
          unsat[s] = unsat.back();
          slot[unsat[s]] = s;
          unsat.pop_back();
        }
      } else if (--true_count[c] == 0) {
        slot[c] = static_cast<std::uint32_t>(unsat.size());
        unsat.push_back(c);
      }
    }
  }
  if (!unsat.empty()) return failed("flip budget exhausted", flips);
  return succeeded(std::move(a), flips);
}

PureLiteralReduction pure_literal_reduce(const Formula& formula) {
  const auto n = formula.num_vars();
  PureLiteralReduction out{PartialAssignment(n), {}};
  std::vector<std::uint32_t> pos(std::size_t{n} + 1, 0), neg(std::size_t{n} + 1, 0);
  for (Lit l : formula.literals()) ++(l.is_negative() ? neg : pos)[l.var()];
  std::vector<std::uint8_t> satisfied(formula.num_clauses(), 0);

  auto pure = [&](Var v) { return !out.partial.assigned(v) && ((pos[v] > 0) != (neg[v] > 0)); };
  std::priority_queue<Var, std::vector<Var>, std::greater<>> queue;
  for (Var v = 1; v <= n; ++v) {
    if (pure(v)) queue.push(v);
  }
  while (!queue.empty()) {
    const Var v = queue.top();
    queue.pop();
    if (!pure(v)) continue;
    const bool value = pos[v] > 0;
    out.partial.set(v, value);
    for (auto occ : formula.occurrences(v)) {
      const auto i = occ.clause();
      if (satisfied[i]) continue;
      satisfied[i] = 1;
      for (Lit l : formula.clause(i)) {
        --(l.is_negative() ? neg : pos)[l.var()];
        if (pure(l.var())) queue.push(l.var());
      }
    }
  }
  for (std::size_t i = 0; i < formula.num_clauses(); ++i) {
    if (!satisfied[i]) out.residual.push_back(i);
  }
  return out;
}

BaselineResult pure_literal_solve(const Formula& formula) {
  auto reduction = pure_literal_reduce(formula);
  const auto steps = reduction.partial.assigned_count();
  if (!reduction.residual.empty()) {
    return failed(std::to_string(reduction.residual.size()) + " clauses left after pure literal elimination", steps);
  }
  return succeeded(reduction.partial.complete(true), steps);
}

BaselineResult run_baseline(const Formula& formula, const BaselineConfig& config) {
  switch (config.algorithm) {
    case BaselineAlgorithm::unit_clause: return unit_clause_solve(formula, config.seed);
    case BaselineAlgorithm::shortest_clause: return shortest_clause_solve(formula, config.seed);
    case BaselineAlgorithm::walksat:
      return walksat_solve(formula, config.seed, config.max_flips ? config.max_flips : default_max_flips(formula));
    case BaselineAlgorithm::pure_literal: return pure_literal_solve(formula);
  }
  throw std::invalid_argument("unknown baseline algorithm");
}

}  // namespace fixsat
