#include "noisyemo/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace noisyemo {

std::string to_symbol(Direction d) {
  switch (d) {
    case Direction::better: return "+";
    case Direction::worse: return "-";
    case Direction::similar: return "~";
  }
  return "?";
}

namespace {

// Doubled midranks of the pooled sample (integers, so the exact null
// distribution of the rank sum can be counted by dynamic programming).
std::vector<long> doubled_midranks(const std::vector<double>& pooled) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
  std::vector<long> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const long twice = static_cast<long>(i + 1) + static_cast<long>(j + 1);
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = twice;
    i = j + 1;
  }
  return ranks;
}

double exact_p_value(const std::vector<long>& ranks, std::size_t na, long observed) {
  const long total = std::accumulate(ranks.begin(), ranks.end(), 0L);
  // counts[k][s]: subsets of size k with doubled rank sum s
  std::vector<std::vector<double>> counts(na + 1, std::vector<double>(static_cast<std::size_t>(total) + 1, 0.0));
  counts[0][0] = 1.0;
  for (long r : ranks) {
    for (std::size_t k = na; k >= 1; --k) {
      auto& row = counts[k];
      const auto& prev = counts[k - 1];
      for (long s = total; s >= r; --s) row[static_cast<std::size_t>(s)] += prev[static_cast<std::size_t>(s - r)];
    }
  }
  const double n = static_cast<double>(ranks.size());
  const double expected = static_cast<double>(na) * (n + 1.0);  // doubled
  const double dev = std::abs(static_cast<double>(observed) - expected);
  double extreme = 0.0, all = 0.0;
  for (long s = 0; s <= total; ++s) {
    const double c = counts[na][static_cast<std::size_t>(s)];
    all += c;
    if (std::abs(static_cast<double>(s) - expected) >= dev - 1e-9) extreme += c;
  }
  return std::min(1.0, extreme / all);
}

}  // namespace

MannWhitneyResult mann_whitney(std::span<const double> a, std::span<const double> b, double alpha,
                               bool higher_is_better) {
  if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("mann_whitney: each sample needs at least two values");
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranks = doubled_midranks(pooled);
  const long ra2 = std::accumulate(ranks.begin(), ranks.begin() + static_cast<long>(a.size()), 0L);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());

  MannWhitneyResult r;
  r.u_a = na * nb + na * (na + 1.0) / 2.0 - static_cast<double>(ra2) / 2.0;
  r.u_b = na * nb - r.u_a;
  r.u = std::min(r.u_a, r.u_b);
  r.exact = a.size() < 20 || b.size() < 20;
  if (r.exact) {
    r.p_value = exact_p_value(ranks, a.size(), ra2);
  } else {
    const double n = na + nb;
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    for (std::size_t i = 0; i < sorted.size();) {
      std::size_t j = i;
      while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
      const double t = static_cast<double>(j - i);
      tie_term += t * t * t - t;
      i = j;
    }
    const double var = na * nb / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if (var <= 0.0) {
      r.p_value = 1.0;
    } else {
      const double z = (std::abs(r.u_a - na * nb / 2.0) - 0.5) / std::sqrt(var);
      r.p_value = std::min(1.0, std::erfc(std::max(z, 0.0) / std::sqrt(2.0)));
    }
  }
  r.reject = r.p_value < alpha;
  if (r.reject) {
    const bool a_larger = r.u_a < r.u_b;
    r.direction = (a_larger == higher_is_better) ? Direction::better : Direction::worse;
  }
  return r;
}

double quantile(std::span<const double> values, double p) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const double h = (static_cast<double>(v.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

double median(std::span<const double> values) { return quantile(values, 0.5); }

BoxStats box_stats(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("box_stats of an empty sample");
  BoxStats s;
  s.count = values.size();
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  s.q1 = quantile(values, 0.25);
  s.median = quantile(values, 0.5);
  s.q3 = quantile(values, 0.75);
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

}  // namespace noisyemo
