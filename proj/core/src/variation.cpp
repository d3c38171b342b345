#include "noisyemo/variation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace noisyemo {

void VariationParameters::validate() const {
  if (!(crossover_probability >= 0.0 && crossover_probability <= 1.0)) {
    throw std::invalid_argument("crossover probability must lie in [0, 1]");
  }
  if (!(crossover_eta >= 0.0) || !(mutation_eta >= 0.0)) {
    throw std::invalid_argument("distribution indices must be >= 0");
  }
  if (!(mutation_probability <= 1.0)) throw std::invalid_argument("mutation probability must be <= 1");
}

namespace {

double spread_factor(double beta, double eta, double u) {
  const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
  if (u <= 1.0 / alpha) return std::pow(u * alpha, 1.0 / (eta + 1.0));
  return std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
}

}  // namespace

std::pair<DecisionVector, DecisionVector> sbx_crossover(std::span<const double> p1, std::span<const double> p2,
                                                        std::span<const Interval> bounds,
                                                        const VariationParameters& params, RandomStream& rng) {
  if (p1.size() != p2.size() || p1.size() != bounds.size()) throw std::invalid_argument("sbx_crossover: dimension");
  DecisionVector c1(p1.begin(), p1.end());
  DecisionVector c2(p2.begin(), p2.end());
  if (rng.uniform() > params.crossover_probability) return {c1, c2};
  const double eta = params.crossover_eta;
  for (std::size_t i = 0; i < c1.size(); ++i) {
    // each coordinate is recombined with probability 1/2
    if (rng.uniform() > 0.5) continue;
    if (std::abs(p1[i] - p2[i]) <= 1e-14) continue;
    const double lo = bounds[i].lo, hi = bounds[i].hi;
    const double y1 = std::min(p1[i], p2[i]);
    const double y2 = std::max(p1[i], p2[i]);
    const double u = rng.uniform();

    const double beta_lo = 1.0 + 2.0 * (y1 - lo) / (y2 - y1);
    const double a = 0.5 * ((y1 + y2) - spread_factor(std::max(beta_lo, 1.0), eta, u) * (y2 - y1));
    const double beta_hi = 1.0 + 2.0 * (hi - y2) / (y2 - y1);
    const double b = 0.5 * ((y1 + y2) + spread_factor(std::max(beta_hi, 1.0), eta, u) * (y2 - y1));

    double child1 = std::clamp(a, lo, hi);
    double child2 = std::clamp(b, lo, hi);
    if (rng.uniform() <= 0.5) std::swap(child1, child2);
    c1[i] = child1;
    c2[i] = child2;
  }
  return {c1, c2};
}

void polynomial_mutation(DecisionVector& x, std::span<const Interval> bounds, const VariationParameters& params,
                         RandomStream& rng) {
  if (x.size() != bounds.size()) throw std::invalid_argument("polynomial_mutation: dimension");
  const double pm = params.mutation_probability > 0.0 ? params.mutation_probability
                                                      : 1.0 / static_cast<double>(x.size());
  const double eta = params.mutation_eta;
  const double power = 1.0 / (eta + 1.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (rng.uniform() > pm) continue;
    const double lo = bounds[i].lo, hi = bounds[i].hi;
    const double y = std::clamp(x[i], lo, hi);
    const double d1 = (y - lo) / (hi - lo);
    const double d2 = (hi - y) / (hi - lo);
    const double u = rng.uniform();
    double dq;
    if (u < 0.5) {
      const double v = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, eta + 1.0);
      dq = std::pow(v, power) - 1.0;
    } else {
      const double v = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, eta + 1.0);
      dq = 1.0 - std::pow(v, power);
    }
    x[i] = std::clamp(y + dq * (hi - lo), lo, hi);
  }
}

}  // namespace noisyemo
