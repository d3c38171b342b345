#pragma once

#include <span>
#include <string>

namespace noisyemo {

enum class Direction { better, worse, similar };

/// Table symbol: "+", "-" or "~".
std::string to_symbol(Direction d);

struct MannWhitneyResult {
  /// u_a = n_a n_b + n_a (n_a + 1) / 2 - R_a, the number of (a, b) pairs
  /// with a < b (ties count 1/2); u_a + u_b = n_a n_b.
  double u_a = 0.0;
  double u_b = 0.0;
  double u = 0.0;  // min(u_a, u_b)
  double p_value = 1.0;
  bool exact = true;
  bool reject = false;
  /// `better`: a significantly better than b.
  Direction direction = Direction::similar;
};

/// Two-sided Mann-Whitney U test. Exact permutation distribution of the
/// (mid)rank sum when either sample has fewer than 20 values, normal
/// approximation with tie correction otherwise.
/// Throws std::invalid_argument for samples with fewer than two values.
MannWhitneyResult mann_whitney(std::span<const double> a, std::span<const double> b, double alpha = 0.05,
                               bool higher_is_better = true);

struct BoxStats {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for one value
  std::size_t count = 0;
};

/// Five-number summary with linearly interpolated quartiles; throws on empty input.
BoxStats box_stats(std::span<const double> values);

double median(std::span<const double> values);
double quantile(std::span<const double> values, double p);

}  // namespace noisyemo
