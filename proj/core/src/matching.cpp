#include "fixsat/matching.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

#include "fixsat/predicates.hpp"

namespace fixsat {
namespace {

constexpr std::uint32_t kFree = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

class HopcroftKarp {
public:
  explicit HopcroftKarp(const ClauseVariableGraph& g)
      : g_(g), mate_left_(g.left_size(), kFree), mate_right_(g.right_size(), kFree), dist_(g.left_size()),
        next_edge_(g.left_size()) {}

  void run() {
    while (layer()) {
      std::fill(next_edge_.begin(), next_edge_.end(), 0);
      for (std::uint32_t u = 0; u < g_.left_size(); ++u) {
        if (mate_left_[u] == kFree) augment(u);
      }
    }
  }

  Matching result() const {
    Matching m;
    for (std::uint32_t u = 0; u < g_.left_size(); ++u) {
      if (mate_left_[u] != kFree) m.pairs.push_back({g_.left()[u], g_.right()[mate_left_[u]]});
    }
    m.covers_left = m.pairs.size() == g_.left_size();
    return m;
  }

  // Alternating reachability from the free left vertices. With a maximum
  // matching the reached left set S has N(S) equal to the reached right set,
  // all matched, so |N(S)| = |S| - (free vertices in S).
  HallViolation hall_violation() const {
    std::vector<std::uint8_t> seen_left(g_.left_size(), 0), seen_right(g_.right_size(), 0);
    std::vector<std::uint32_t> queue;
    for (std::uint32_t u = 0; u < g_.left_size(); ++u) {
      if (mate_left_[u] == kFree) {
        seen_left[u] = 1;
        queue.push_back(u);
      }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (auto v : g_.neighbors(queue[head])) {
        if (seen_right[v]) continue;
        seen_right[v] = 1;
        const auto w = mate_right_[v];
        if (w != kFree && !seen_left[w]) {
          seen_left[w] = 1;
          queue.push_back(w);
        }
      }
    }
    HallViolation h;
    for (std::uint32_t u = 0; u < g_.left_size(); ++u) {
      if (seen_left[u]) h.clauses.push_back(g_.left()[u]);
    }
    for (std::uint32_t v = 0; v < g_.right_size(); ++v) {
      if (seen_right[v]) h.neighborhood.push_back(g_.right()[v]);
    }
    return h;
  }

private:
  bool layer() {
    std::vector<std::uint32_t> queue;
    for (std::uint32_t u = 0; u < g_.left_size(); ++u) {
      if (mate_left_[u] == kFree) {
        dist_[u] = 0;
        queue.push_back(u);
      } else {
        dist_[u] = kInf;
      }
    }
    bool found = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const auto u = queue[head];
      for (auto v : g_.neighbors(u)) {
        const auto w = mate_right_[v];
        if (w == kFree) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return found;
  }

  // Iterative layered DFS; the stack holds the left vertices of the current
  // alternating path and next_edge_ the edge each is trying.
  bool augment(std::uint32_t root) {
    stack_.assign(1, root);
    while (!stack_.empty()) {
      const auto u = stack_.back();
      const auto adj = g_.neighbors(u);
      if (next_edge_[u] == adj.size()) {
        dist_[u] = kInf;
        stack_.pop_back();
        if (!stack_.empty()) ++next_edge_[stack_.back()];
        continue;
      }
      const auto v = adj[next_edge_[u]];
      const auto w = mate_right_[v];
      if (w == kFree) {
        for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
          const auto a = *it;
          const auto b = g_.neighbors(a)[next_edge_[a]];
          mate_left_[a] = b;
          mate_right_[b] = a;
        }
        return true;
      }
      if (dist_[w] != kInf && dist_[w] == dist_[u] + 1) {
        stack_.push_back(w);
      } else {
        ++next_edge_[u];
      }
    }
    return false;
  }

  const ClauseVariableGraph& g_;
  std::vector<std::uint32_t> mate_left_, mate_right_, dist_;
  std::vector<std::size_t> next_edge_;
  std::vector<std::uint32_t> stack_;
};

}  // namespace

ClauseVariableGraph::ClauseVariableGraph(std::vector<std::uint32_t> left_clauses, std::vector<Var> right_vars,
                                         std::vector<std::vector<std::uint32_t>> adjacency)
    : left_(std::move(left_clauses)), right_(std::move(right_vars)), adjacency_(std::move(adjacency)) {
  if (adjacency_.size() != left_.size()) throw std::invalid_argument("adjacency size differs from left size");
  if (!std::is_sorted(left_.begin(), left_.end()) || !std::is_sorted(right_.begin(), right_.end())) {
    throw std::invalid_argument("vertex id lists must be ascending");
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    if (!adj.empty() && adj.back() >= right_.size()) throw std::invalid_argument("edge to unknown right vertex");
    edges_ += adj.size();
  }
}

std::optional<std::size_t> ClauseVariableGraph::left_id(std::uint32_t clause) const {
  auto it = std::lower_bound(left_.begin(), left_.end(), clause);
  if (it == left_.end() || *it != clause) return std::nullopt;
  return static_cast<std::size_t>(it - left_.begin());
}

std::optional<std::size_t> ClauseVariableGraph::right_id(Var var) const {
  auto it = std::lower_bound(right_.begin(), right_.end(), var);
  if (it == right_.end() || *it != var) return std::nullopt;
  return static_cast<std::size_t>(it - right_.begin());
}

bool ClauseVariableGraph::has_edge(std::uint32_t clause, Var var) const {
  auto a = left_id(clause);
  auto b = right_id(var);
  if (!a || !b) return false;
  const auto& adj = adjacency_[*a];
  return std::binary_search(adj.begin(), adj.end(), static_cast<std::uint32_t>(*b));
}

ClauseVariableGraph build_incidence_graph(const Formula& formula, const VarSet& z, const VarSet& z_prime) {
  std::vector<Var> right(z_prime.order().begin(), z_prime.order().end());
  std::sort(right.begin(), right.end());
  std::vector<std::uint32_t> dense(std::size_t{formula.num_vars()} + 1, kFree);
  for (std::uint32_t r = 0; r < right.size(); ++r) dense[right[r]] = r;

  std::vector<std::uint32_t> left;
  std::vector<std::vector<std::uint32_t>> adjacency;
  for (std::size_t i = 0; i < formula.num_clauses(); ++i) {
    if (!is_endangered(formula, z, z_prime, i)) continue;
    left.push_back(static_cast<std::uint32_t>(i));
    auto& adj = adjacency.emplace_back();
    for (Lit l : formula.clause(i)) {
      if (dense[l.var()] != kFree) adj.push_back(dense[l.var()]);
    }
  }
  return ClauseVariableGraph(std::move(left), std::move(right), std::move(adjacency));
}

Matching hopcroft_karp(const ClauseVariableGraph& graph) {
  HopcroftKarp hk(graph);
  hk.run();
  return hk.result();
}

Matching hopcroft_karp(const ClauseVariableGraph& graph, std::optional<HallViolation>& violation) {
  HopcroftKarp hk(graph);
  hk.run();
  Matching m = hk.result();
  if (m.covers_left) {
    violation.reset();
  } else {
    violation = hk.hall_violation();
  }
  return m;
}

Matching brute_force_matching(const ClauseVariableGraph& graph) {
  const std::size_t left = graph.left_size();
  if (left > kBruteForceMaxLeft) throw std::length_error("brute_force_matching: too many left vertices");
  const std::size_t right = graph.right_size();
  const std::size_t states = std::size_t{1} << left;

  std::vector<std::vector<std::uint32_t>> right_adj(right);
  for (std::uint32_t u = 0; u < left; ++u) {
    for (auto v : graph.neighbors(u)) right_adj[v].push_back(u);
  }

  // choice[r][mask]: mask reachable after deciding right vertices 0..r-1;
  // stores 0 for unreachable, 1 for "r-1 left unmatched", 2+u for "r-1
  // matched to u".
  std::vector<std::vector<std::uint8_t>> choice(right + 1, std::vector<std::uint8_t>(states, 0));
  choice[0][0] = 1;
  for (std::size_t r = 0; r < right; ++r) {
    for (std::size_t mask = 0; mask < states; ++mask) {
      if (!choice[r][mask]) continue;
      if (!choice[r + 1][mask]) choice[r + 1][mask] = 1;
      for (auto u : right_adj[r]) {
        const std::size_t next = mask | (std::size_t{1} << u);
        if (next != mask && !choice[r + 1][next]) choice[r + 1][next] = static_cast<std::uint8_t>(2 + u);
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t mask = 0; mask < states; ++mask) {
    if (choice[right][mask] && std::popcount(mask) > std::popcount(best)) best = mask;
  }

  Matching m;
  std::size_t mask = best;
  for (std::size_t r = right; r > 0; --r) {
    const auto c = choice[r][mask];
    if (c >= 2) {
      const std::uint32_t u = c - 2;
      m.pairs.push_back({graph.left()[u], graph.right()[r - 1]});
      mask &= ~(std::size_t{1} << u);
    }
  }
  std::sort(m.pairs.begin(), m.pairs.end(), [](const auto& a, const auto& b) { return a.clause < b.clause; });
  m.covers_left = m.pairs.size() == left;
  return m;
}

bool is_matching(const ClauseVariableGraph& graph, const Matching& matching) {
  std::vector<std::uint8_t> used_left(graph.left_size(), 0), used_right(graph.right_size(), 0);
  for (const auto& p : matching.pairs) {
    if (!graph.has_edge(p.clause, p.var)) return false;
    auto a = *graph.left_id(p.clause);
    auto b = *graph.right_id(p.var);
    if (used_left[a] || used_right[b]) return false;
    used_left[a] = used_right[b] = 1;
  }
  return true;
}

bool verify_matching(const ClauseVariableGraph& graph, const Matching& matching) {
  return is_matching(graph, matching) && matching.pairs.size() == graph.left_size();
}

bool verify_hall_violation(const ClauseVariableGraph& graph, const HallViolation& violation) {
  std::vector<std::uint8_t> in_neighborhood(graph.right_size(), 0);
  std::size_t count = 0;
  for (auto c : violation.clauses) {
    auto a = graph.left_id(c);
    if (!a) return false;
    for (auto v : graph.neighbors(*a)) {
      if (!in_neighborhood[v]) {
        in_neighborhood[v] = 1;
        ++count;
      }
    }
  }
  return !violation.clauses.empty() && count < violation.clauses.size();
}

}  // namespace fixsat
