#pragma once

#include <span>
#include <utility>
#include <vector>

#include "noisyemo/landscapes.hpp"
#include "noisyemo/random.hpp"

namespace noisyemo {

/// Real-coded variation constants (Deb's defaults).
struct VariationParameters {
  double crossover_probability = 0.9;  // p_c
  double crossover_eta = 15.0;         // eta_c
  double mutation_eta = 20.0;          // eta_m
  /// Per-coordinate mutation probability; <= 0 means 1/n.
  double mutation_probability = 0.0;

  void validate() const;
};

/// Simulated binary crossover, bounded form; children are clipped to `bounds`.
std::pair<DecisionVector, DecisionVector> sbx_crossover(std::span<const double> p1, std::span<const double> p2,
                                                        std::span<const Interval> bounds,
                                                        const VariationParameters& params, RandomStream& rng);

/// Bounded polynomial mutation in place.
void polynomial_mutation(DecisionVector& x, std::span<const Interval> bounds, const VariationParameters& params,
                         RandomStream& rng);

}  // namespace noisyemo
