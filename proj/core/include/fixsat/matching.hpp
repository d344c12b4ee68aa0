#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fixsat/formula.hpp"
#include "fixsat/var_set.hpp"

namespace fixsat {

/// Bipartite graph with clause indices on the left and variables on the
/// right. Vertices are stored densely; left() and right() translate dense
/// ids back to clause indices and variables. Both id lists are ascending.
class ClauseVariableGraph {
public:
  ClauseVariableGraph() = default;
  /// adjacency[a] lists dense right ids adjacent to left vertex a. Duplicate
  /// entries are removed.
  ClauseVariableGraph(std::vector<std::uint32_t> left_clauses, std::vector<Var> right_vars,
                      std::vector<std::vector<std::uint32_t>> adjacency);

  std::size_t left_size() const { return left_.size(); }
  std::size_t right_size() const { return right_.size(); }
  std::size_t edge_count() const { return edges_; }

  std::span<const std::uint32_t> left() const { return left_; }
  std::span<const Var> right() const { return right_; }
  std::span<const std::uint32_t> neighbors(std::size_t left_id) const { return adjacency_[left_id]; }

  std::optional<std::size_t> left_id(std::uint32_t clause) const;
  std::optional<std::size_t> right_id(Var var) const;
  bool has_edge(std::uint32_t clause, Var var) const;

private:
  std::vector<std::uint32_t> left_;
  std::vector<Var> right_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
  std::size_t edges_ = 0;
};

struct MatchedPair {
  std::uint32_t clause;
  Var var;
  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

/// A set of clause-variable edges. Produced matchings list pairs in
/// ascending clause order.
struct Matching {
  std::vector<MatchedPair> pairs;
  bool covers_left = false;

  std::size_t size() const { return pairs.size(); }
};

/// Witness that no matching covers the left side: a set of left vertices
/// whose combined neighborhood is strictly smaller than the set.
struct HallViolation {
  std::vector<std::uint32_t> clauses;
  std::vector<Var> neighborhood;
};

/// Left side: every (Z,Z')-endangered clause. Each is joined to the distinct
/// variables of Z' occurring in it, in any position and polarity. Right
/// side: all of Z'.
ClauseVariableGraph build_incidence_graph(const Formula& formula, const VarSet& z, const VarSet& z_prime);

/// Maximum-cardinality matching in O(E sqrt(V)).
Matching hopcroft_karp(const ClauseVariableGraph& graph);

/// Same as hopcroft_karp, additionally extracting a Hall violation from the
/// final alternating-path layering when the matching does not cover the left.
Matching hopcroft_karp(const ClauseVariableGraph& graph, std::optional<HallViolation>& violation);

/// Exact maximum matching by dynamic programming over subsets of the left
/// side. Test oracle; throws std::length_error above kBruteForceMaxLeft.
inline constexpr std::size_t kBruteForceMaxLeft = 15;
Matching brute_force_matching(const ClauseVariableGraph& graph);

/// Pairs are graph edges and no vertex is used twice.
bool is_matching(const ClauseVariableGraph& graph, const Matching& matching);

/// is_matching and every left vertex is covered.
bool verify_matching(const ClauseVariableGraph& graph, const Matching& matching);

/// Checks |N(S)| < |S| for the violation's clause set against the graph.
bool verify_hall_violation(const ClauseVariableGraph& graph, const HallViolation& violation);

}  // namespace fixsat
