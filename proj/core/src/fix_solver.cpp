#include "fixsat/fix_solver.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "fixsat/instrumentation.hpp"
#include "fixsat/predicates.hpp"

namespace fixsat {

SolverParams SolverParams::for_width(std::uint32_t k) {
  if (k < 2) throw FormulaError("Fix requires clause width k >= 2");
  SolverParams p;
  p.k = k;
  p.k1 = (k + 1) / 2;
  p.scan_end = p.k1 - 1;
  p.fallback_pos = p.k1 - 1;
  p.safe_repair_begin = p.k1;
  p.safe_repair_end = k >= 5 ? std::max<std::size_t>(p.k1, k - 5) : p.k1;
  p.forced_repair_begin = k >= 5 ? k - 5 : 0;
  p.forced_repair_end = k;
  return p;
}

// Phase 1 ------------------------------------------------------------------

Phase1Process::Phase1Process(const Formula& formula, bool record_trace)
    : formula_(&formula), params_(SolverParams::for_width(formula.width())), z_(formula.num_vars()),
      pos_outside_(formula.num_clauses(), 0), neg_inside_(formula.num_clauses(), 0),
      pos_outside_xor_(formula.num_clauses(), 0), unique_support_(std::size_t{formula.num_vars()} + 1, 0),
      record_trace_(record_trace) {
  for (std::size_t i = 0; i < formula.num_clauses(); ++i) {
    for (Lit l : formula.clause(i)) {
      if (l.is_positive()) {
        ++pos_outside_[i];
        pos_outside_xor_[i] ^= l.var();
      }
    }
    if (is_unique(i)) {
      ++unique_support_[pos_outside_xor_[i]];
      ++unique_count_;
    }
  }
}

bool Phase1Process::step() {
  const auto& f = *formula_;
  while (next_clause_ < f.num_clauses()) {
    const std::size_t i = next_clause_++;
    auto c = f.clause(i);
    // An all-negative clause holds a Z variable iff it has a negative
    // occurrence inside Z.
    if (neg_inside_[i] != 0) continue;
    if (!std::all_of(c.begin(), c.end(), [](Lit l) { return l.is_negative(); })) continue;

    Var chosen = 0;
    bool fallback = true;
    for (std::size_t j = 0; j < params_.scan_end; ++j) {
      if (is_safe(c[j].var())) {
        chosen = c[j].var();
        fallback = false;
        break;
      }
    }
    if (fallback) {
      chosen = c[params_.fallback_pos].var();
      ++fallback_count_;
    }
    add(chosen);
    if (record_trace_) trace_.push_back({z_.size(), i, chosen, fallback, unique_count_});
    return true;
  }
  return false;
}

void Phase1Process::add(Var x) {
  z_.insert(x);
  for (auto occ : formula_->occurrences(x)) {
    const auto i = occ.clause();
    const bool was_unique = is_unique(i);
    const Var was_support = pos_outside_xor_[i];
    if (occ.is_negative()) {
      ++neg_inside_[i];
    } else {
      --pos_outside_[i];
      pos_outside_xor_[i] ^= x;
    }
    const bool now_unique = is_unique(i);
    if (was_unique) {
      --unique_support_[was_support];
      --unique_count_;
    }
    if (now_unique) {
      ++unique_support_[pos_outside_xor_[i]];
      ++unique_count_;
    }
  }
}

Assignment Phase1Process::sigma() const {
  Assignment a(formula_->num_vars(), true);
  for (Var v : z_.order()) a.set(v, false);
  return a;
}

Phase1Process run_phase1(const Formula& formula, bool record_trace) {
  Phase1Process p(formula, record_trace);
  p.run();
  return p;
}

// Phase 2 ------------------------------------------------------------------

Phase2Process::Phase2Process(const Formula& formula, const VarSet& z)
    : formula_(&formula), params_(SolverParams::for_width(formula.width())), z_(z),
      z_prime_(formula.num_vars()), support_(formula.num_clauses(), 0), distinct_(formula.num_clauses(), 0),
      pos_live_(formula.num_clauses(), 0), neg_inside_(formula.num_clauses(), 0),
      pos_live_xor_(formula.num_clauses(), 0), unsafe_support_(std::size_t{formula.num_vars()} + 1, 0),
      in_queue_(formula.num_clauses(), 0) {
  if (z.universe() != formula.num_vars()) throw std::invalid_argument("Z is over a different variable count");
  for (std::size_t i = 0; i < formula.num_clauses(); ++i) {
    for (Lit l : formula.clause(i)) {
      const bool in_z = z_.contains(l.var());
      if (l.is_positive()) {
        if (!in_z) {
          ++support_[i];
          ++pos_live_[i];
          pos_live_xor_[i] ^= l.var();
        }
      } else if (in_z) {
        ++support_[i];
        ++neg_inside_[i];
      }
    }
    if (pos_live_[i] == 1 && neg_inside_[i] == 0) ++unsafe_support_[pos_live_xor_[i]];
    enqueue_if_needed(static_cast<std::uint32_t>(i));
  }
  initial_queue_size_ = heap_.size();
}

void Phase2Process::enqueue_if_needed(std::uint32_t clause) {
  if (support_[clause] == 0 && distinct_[clause] < 3) {
    if (!in_queue_[clause]) {
      in_queue_[clause] = 1;
      heap_.push(clause);
    }
  } else {
    // Entries stay in the heap and are skipped on pop.
    in_queue_[clause] = 0;
  }
}

bool Phase2Process::step() {
  if (status_ != Status::running) return false;
  while (!heap_.empty() && !in_queue_[heap_.top()]) heap_.pop();
  if (heap_.empty()) {
    status_ = Status::done;
    return false;
  }
  const std::uint32_t i = heap_.top();
  auto c = formula_->clause(i);

  std::array<Var, 3> chosen{};
  std::size_t count = 0;
  auto already = [&](Var v) { return std::find(chosen.begin(), chosen.begin() + count, v) != chosen.begin() + count; };

  for (std::size_t j = params_.safe_repair_begin; j < params_.safe_repair_end && count < 3; ++j) {
    const Var v = c[j].var();
    if (is_safe(v) && !already(v)) chosen[count++] = v;
  }
  if (count < 3) {
    count = 0;
    for (std::size_t j = params_.forced_repair_begin; j < params_.forced_repair_end && count < 3; ++j) {
      const Var v = c[j].var();
      if (!z_prime_.contains(v) && !already(v)) chosen[count++] = v;
    }
    if (count < 3) {
      status_ = Status::degenerate_clause;
      degenerate_clause_ = i;
      return false;
    }
  }
  for (Var v : chosen) add(v);
  ++iterations_;
  return true;
}

void Phase2Process::add(Var x) {
  z_prime_.insert(x);
  const bool x_in_z = z_.contains(x);
  std::uint32_t last = ~std::uint32_t{0};
  for (auto occ : formula_->occurrences(x)) {
    const auto i = occ.clause();
    if (i != last) {
      ++distinct_[i];
      last = i;
    }
    if (occ.is_negative() == x_in_z) --support_[i];
    if (!occ.is_negative() && !x_in_z) {
      const bool was_witness = pos_live_[i] == 1 && neg_inside_[i] == 0;
      const Var was_var = pos_live_xor_[i];
      --pos_live_[i];
      pos_live_xor_[i] ^= x;
      const bool now_witness = pos_live_[i] == 1 && neg_inside_[i] == 0;
      if (was_witness) --unsafe_support_[was_var];
      if (now_witness) ++unsafe_support_[pos_live_xor_[i]];
    }
    enqueue_if_needed(i);
  }
}

std::vector<std::size_t> Phase2Process::queue_contents() const {
  std::vector<std::size_t> q;
  for (std::size_t i = 0; i < in_queue_.size(); ++i) {
    if (in_queue_[i]) q.push_back(i);
  }
  return q;
}

Phase2Process run_phase2(const Formula& formula, const VarSet& z) {
  Phase2Process p(formula, z);
  p.run();
  return p;
}

// Phase 3 ------------------------------------------------------------------

const char* to_string(FixFailure failure) {
  switch (failure) {
    case FixFailure::none: return "none";
    case FixFailure::degenerate_clause: return "degenerate-clause";
    case FixFailure::matching_not_found: return "matching-not-found";
    case FixFailure::internal_error: return "internal-error";
  }
  return "unknown";
}

Assignment assignment_from_matching(const Formula& formula, const VarSet& z, const VarSet& z_prime,
                                    const Matching& matching) {
  Assignment a(formula.num_vars(), true);
  for (Var v : z.order()) {
    if (!z_prime.contains(v)) a.set(v, false);
  }
  for (const auto& p : matching.pairs) {
    auto c = formula.clause(p.clause);
    if (std::any_of(c.begin(), c.end(), [&](Lit l) { return l == Lit::negative(p.var); })) a.set(p.var, false);
  }
  return a;
}

FixOutcome run_phase3(const Formula& formula, const VarSet& z, const VarSet& z_prime) {
  FixOutcome out;
  const auto graph = build_incidence_graph(formula, z, z_prime);
  std::optional<HallViolation> violation;
  const auto matching = hopcroft_karp(graph, violation);
  out.stats.endangered_count = graph.left_size();
  out.stats.matching_covered = matching.covers_left;
  if (!matching.covers_left) {
    out.failure = FixFailure::matching_not_found;
    out.detail = std::to_string(graph.left_size() - matching.size()) + " of " +
                 std::to_string(graph.left_size()) + " endangered clauses unmatched";
    out.hall_violation = std::move(violation);
    out.stats.flag(Anomaly::matching_not_found);
    return out;
  }
  auto assignment = assignment_from_matching(formula, z, z_prime, matching);
  const auto unsat = unsatisfied_indices(formula, assignment);
  if (!unsat.empty()) {
    out.failure = FixFailure::internal_error;
    out.detail = "covering matching left clause " + std::to_string(unsat.front()) + " unsatisfied";
    out.stats.flag(Anomaly::internal_error);
    return out;
  }
  out.assignment = std::move(assignment);
  return out;
}

FixOutcome fix_solve(const Formula& formula, const FixOptions& options) {
  PhaseStats stats;
  std::vector<TraceRecord> trace;
  VarSet z;
  {
    Phase1Process p1(formula, options.trace);
    p1.run();
    record_phase1(stats, p1);
    trace = p1.trace();
    z = p1.z();
  }

  Phase2Process p2(formula, z);
  p2.run();
  record_phase2(stats, p2);
  if (p2.status() == Phase2Process::Status::degenerate_clause) {
    FixOutcome out;
    out.failure = FixFailure::degenerate_clause;
    out.detail = "clause " + std::to_string(*p2.degenerate_clause()) +
                 " has fewer than three distinct variables outside Z' in its last five positions";
    out.stats = stats;
    out.trace = std::move(trace);
    return out;
  }

  FixOutcome out = run_phase3(formula, z, p2.z_prime());
  record_phase3(stats, out.stats);
  out.stats = stats;
  out.trace = std::move(trace);
  return out;
}

}  // namespace fixsat
