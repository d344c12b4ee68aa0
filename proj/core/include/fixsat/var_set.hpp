#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "fixsat/formula.hpp"

namespace fixsat {

/// Subset of the variables 1..n that remembers insertion order.
class VarSet {
public:
  VarSet() = default;
  explicit VarSet(std::uint32_t num_vars) : member_(std::size_t{num_vars} + 1, 0) {}
  VarSet(std::uint32_t num_vars, std::initializer_list<Var> vars) : VarSet(num_vars) {
    for (Var v : vars) insert(v);
  }

  bool contains(Var v) const { return v < member_.size() && member_[v] != 0; }

  /// Returns false if v was already present.
  bool insert(Var v) {
    if (member_[v]) return false;
    member_[v] = 1;
    order_.push_back(v);
    return true;
  }

  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }
  std::uint32_t universe() const { return static_cast<std::uint32_t>(member_.empty() ? 0 : member_.size() - 1); }
  /// Elements in insertion order.
  std::span<const Var> order() const { return order_; }

private:
  std::vector<std::uint8_t> member_;
  std::vector<Var> order_;
};

}  // namespace fixsat
