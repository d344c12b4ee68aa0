#include "fixsat/generator.hpp"

#include <cmath>
#include <string>

#include "fixsat/rng.hpp"

namespace fixsat {

std::uint64_t clauses_for_density(std::uint32_t n, double density) {
  if (!(density >= 0.0) || !std::isfinite(density)) throw FormulaError("density must be a finite value >= 0");
  const double product = density * static_cast<double>(n);
  return static_cast<std::uint64_t>(std::floor(product * (1.0 + 1e-12)));
}

GeneratorConfig GeneratorConfig::from_density(std::uint32_t n, std::uint32_t k, double density,
                                              std::uint64_t seed) {
  return GeneratorConfig{n, k, clauses_for_density(n, density), seed};
}

void GeneratorConfig::validate() const {
  if (n == 0) throw FormulaError("n must be at least 1");
  if (k == 0) throw FormulaError("k must be at least 1");
  if (k > Formula::kMaxWidth) throw FormulaError("k exceeds " + std::to_string(Formula::kMaxWidth));
  if (n > static_cast<std::uint32_t>(INT32_MAX)) throw FormulaError("n too large");
  if (m >= Formula::kMaxClauses) throw FormulaError("m too large");
}

Formula sample_formula(const GeneratorConfig& config) {
  config.validate();
  const std::uint64_t two_n = 2 * std::uint64_t{config.n};
  std::vector<Lit> literals(config.m * config.k);
  std::size_t pos = 0;
  for (std::uint64_t i = 0; i < config.m; ++i) {
    Rng rng(derive_seed(config.seed, i));
    for (std::uint32_t j = 0; j < config.k; ++j) {
      // 0..n-1 are positive literals, n..2n-1 negative.
      const std::uint64_t r = rng.below(two_n);
      literals[pos++] = r < config.n ? Lit::positive(static_cast<Var>(r + 1))
                                     : Lit::negative(static_cast<Var>(r - config.n + 1));
    }
  }
  return Formula(config.n, config.k, std::move(literals));
}

}  // namespace fixsat
