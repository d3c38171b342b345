#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "noisyemo/random.hpp"
#include "noisyemo/statistics.hpp"

using namespace noisyemo;
using doctest::Approx;

namespace {

// Two-sided exact p-value by enumerating every split of the pooled sample.
double enumerated_p(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = pooled.size(), na = a.size();
  auto u_of = [&](const std::vector<bool>& in_a) {
    double u = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_a[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (in_a[j]) continue;
        u += pooled[i] < pooled[j] ? 1.0 : (pooled[i] == pooled[j] ? 0.5 : 0.0);
      }
    }
    return u;
  };
  std::vector<bool> obs(n, false);
  std::fill(obs.begin(), obs.begin() + static_cast<long>(na), true);
  const double centre = static_cast<double>(na * (n - na)) / 2.0;
  const double dev = std::abs(u_of(obs) - centre);
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(na), true);
  std::sort(mask.begin(), mask.end());
  double hit = 0, all = 0;
  do {
    ++all;
    if (std::abs(u_of(mask) - centre) >= dev - 1e-9) ++hit;
  } while (std::next_permutation(mask.begin(), mask.end()));
  return hit / all;
}

}  // namespace

TEST_CASE("Mann-Whitney small samples") {
  const std::vector<double> a{1, 3}, b{2, 4};
  const auto r = mann_whitney(a, b);
  CHECK(r.u_a == 3.0);
  CHECK(r.u_b == 1.0);
  CHECK(r.u == 1.0);
  CHECK_FALSE(r.reject);
  CHECK(r.exact);

  const auto same = mann_whitney(a, a);
  CHECK(same.direction == Direction::similar);
  CHECK(same.p_value == Approx(1.0));
  CHECK_THROWS_AS(mann_whitney(std::vector<double>{1}, b), std::invalid_argument);

  RandomStream rng(6);
  for (int t = 0; t < 30; ++t) {
    std::vector<double> x(2 + rng.below(6)), y(2 + rng.below(6));
    for (auto& v : x) v = static_cast<double>(rng.below(6));
    for (auto& v : y) v = static_cast<double>(rng.below(6)) + (t % 3 == 0 ? 2.0 : 0.0);
    CHECK(mann_whitney(x, y).p_value == Approx(enumerated_p(x, y)).epsilon(1e-9));
  }
}

TEST_CASE("Mann-Whitney large samples and direction") {
  std::vector<double> a, b;
  RandomStream rng(7);
  for (int i = 0; i < 30; ++i) {
    a.push_back(10.0 + rng.uniform());
    b.push_back(rng.uniform());
  }
  auto r = mann_whitney(a, b);
  CHECK_FALSE(r.exact);
  CHECK(r.u_b == 900.0);
  CHECK(r.u_a == 0.0);
  CHECK(r.reject);
  CHECK(r.direction == Direction::better);
  CHECK(r.p_value < 1e-9);
  CHECK(mann_whitney(a, b, 0.05, false).direction == Direction::worse);
  CHECK(mann_whitney(b, a).direction == Direction::worse);

  // Normal approximation agrees with the exact distribution for moderate sizes.
  std::vector<double> c, d;
  for (int i = 0; i < 25; ++i) {
    c.push_back(rng.normal(0.4, 1.0));
    d.push_back(rng.normal());
  }
  const auto approx = mann_whitney(c, d);
  std::vector<double> c19(c.begin(), c.begin() + 19);
  CHECK(approx.p_value > 0.0);
  CHECK(approx.p_value <= 1.0);
  CHECK(mann_whitney(c19, d).exact);
}

TEST_CASE("box statistics") {
  const std::vector<double> v{7, 1, 3, 5};
  const auto s = box_stats(v);
  CHECK(s.min == 1);
  CHECK(s.max == 7);
  CHECK(s.median == Approx(4));
  CHECK(s.q1 == Approx(2.5));
  CHECK(s.q3 == Approx(5.5));
  CHECK(s.mean == Approx(4));
  CHECK(s.stddev == Approx(std::sqrt(20.0 / 3.0)));
  const auto one = box_stats(std::vector<double>{2.5});
  CHECK(one.min == 2.5);
  CHECK(one.q1 == 2.5);
  CHECK(one.max == 2.5);
  CHECK(one.stddev == 0.0);
  CHECK_THROWS(box_stats(std::vector<double>{}));
}
