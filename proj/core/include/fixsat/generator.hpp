#pragma once

#include <cstdint>

#include "fixsat/formula.hpp"

namespace fixsat {

/// Parameters of the uniform random k-SAT model: m clauses drawn
/// independently and uniformly from all (2n)^k ordered k-tuples of literals.
struct GeneratorConfig {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint64_t m = 0;
  std::uint64_t seed = 0;

  /// m = floor(density * n).
  static GeneratorConfig from_density(std::uint32_t n, std::uint32_t k, double density, std::uint64_t seed);

  /// Throws FormulaError when n or k is zero or the sizes exceed Formula limits.
  void validate() const;

  friend bool operator==(const GeneratorConfig&, const GeneratorConfig&) = default;
};

/// floor(density * n), tolerant to the last-bit error of the product.
std::uint64_t clauses_for_density(std::uint32_t n, double density);

/// Draws a formula. Clause i uses its own stream keyed by (seed, i) and
/// draws its k literals in position order, so the result depends only on
/// the config and clause blocks can be generated independently.
Formula sample_formula(const GeneratorConfig& config);

}  // namespace fixsat
