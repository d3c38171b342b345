#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "noisyemo/landscapes.hpp"
#include "oracles.hpp"

using namespace noisyemo;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;
double sinc2(double x) { return std::pow(std::sin(x) / x, 2); }
}  // namespace

TEST_CASE("multi-sphere values") {
  const auto s2 = LandscapeSpec::multi_sphere(2);
  CHECK(eval_multisphere(std::vector<double>{1, 0}, s2).values == std::vector<double>{0, 2});
  CHECK(eval_multisphere(std::vector<double>{0.5, 0.5}, s2).values == std::vector<double>{0.5, 0.5});
  const auto s10 = LandscapeSpec::multi_sphere(10);
  CHECK(eval_multisphere(std::vector<double>(10, 0.0), s10).values == std::vector<double>{1, 1});
  CHECK_THROWS_AS(eval_multisphere(std::vector<double>{1, 2, 3}, s2), std::invalid_argument);
}

TEST_CASE("bi-sphere front") {
  CHECK(multisphere_front(0.0) == Approx(2.0));
  CHECK(multisphere_front(2.0) == Approx(0.0));
  CHECK(multisphere_front(0.5) == Approx(0.5));
  CHECK_THROWS_AS(multisphere_front(2.5), std::domain_error);
  // Points on the segment between the centers trace the front.
  const auto s = LandscapeSpec::multi_sphere(3);
  for (double t = 0.0; t <= 1.0; t += 0.125) {
    const auto f = eval_multisphere(std::vector<double>{1 - t, t, 0}, s);
    CHECK(f[1] == Approx(multisphere_front(f[0])).epsilon(1e-12));
  }
  // Front hypervolume against (2,2) by midpoint quadrature.
  double area = 0.0;
  const int k = 200000;
  for (int i = 0; i < k; ++i) area += (2.0 - multisphere_front(2.0 * (i + 0.5) / k)) * 2.0 / k;
  CHECK(area == Approx(10.0 / 3.0).epsilon(1e-6));
  CHECK(analytic_front_hypervolume(s) == Approx(area).epsilon(1e-6));
}

TEST_CASE("sphere perceived moments") {
  auto m = multisphere_perceived_moments(1.0, 10, 0.01);
  CHECK(m.mean == Approx(1.1));
  CHECK(m.variance == Approx(0.042));
  m = multisphere_perceived_moments(5.0, 10, 0.0);
  CHECK(m.mean == 5.0);
  CHECK(m.variance == 0.0);
  m = multisphere_perceived_moments(0.0, 30, 0.02);
  CHECK(m.mean == Approx(0.6));
  CHECK(m.variance == Approx(0.024));
  // Noncentral chi-square: eps2 * chi2'(n, f/eps2).
  for (double f : {0.0, 0.3, 2.0}) {
    const double e = 0.02;
    const int n = 7;
    m = multisphere_perceived_moments(f, n, e);
    CHECK(m.mean == Approx(e * (n + f / e)));
    CHECK(m.variance == Approx(e * e * 2.0 * (n + 2.0 * f / e)));
  }
}

TEST_CASE("grating intensity") {
  const std::vector<double> zero{0, 0}, opposite{0, pi};
  CHECK(eval_grating_intensity(0.0, zero, 1, 4) == Approx(1.0));
  CHECK(eval_grating_intensity(pi / 4, zero, 1, 4) == Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(eval_grating_intensity(0.0, opposite, 1, 4)) < 1e-15);
  CHECK_THROWS_AS(eval_grating_intensity(0.0, std::vector<double>{}, 1, 4), std::invalid_argument);

  RandomStream rng(11);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> phi(1 + rng.below(12));
    for (auto& p : phi) p = rng.uniform(-4, 4);
    const double q = rng.uniform(-2, 2);
    CHECK(eval_grating_intensity(q, phi, 1.0, 4.0) == Approx(oracle::grating_intensity(q, phi, 1.0, 4.0)));
  }
  // Global phase invariance at q = 0.
  std::vector<double> same(9, 1.234);
  CHECK(eval_grating_intensity(0.0, same, 1, 4) == Approx(1.0));
}

TEST_CASE("grating study instance") {
  const auto spec = LandscapeSpec::grating_study_instance(2);
  CHECK(spec.positions[1] == Approx(0.5 * grating_period(4.0)));
  auto f = eval_grating_problem(std::vector<double>{0, 0}, spec);
  CHECK(f[0] == Approx(1.0));
  CHECK(f[1] == Approx(0.0).epsilon(1e-15));
  f = eval_grating_problem(std::vector<double>{0, pi}, spec);
  CHECK(std::abs(f[0]) < 1e-15);
  CHECK(f[1] == Approx(sinc2(pi / 8)));
  CHECK(f[1] == Approx(0.94965).epsilon(1e-5));
  CHECK(spec.senses[0] == Sense::maximize);
}

TEST_CASE("analytic grating front") {
  const auto front = grating_true_front(10);
  auto p = front.point(0.0);
  CHECK(p[0] == Approx(1.0));
  CHECK(std::abs(p[1]) < 1e-12);
  p = front.point(pi);
  CHECK(std::abs(p[0]) < 1e-12);
  CHECK(p[1] == Approx(sinc2(pi / 8)));
  CHECK(front.hypervolume() == Approx(0.47482).epsilon(1e-4));
  CHECK(front.hypervolume() == Approx(sinc2(pi / 8) / 2));

  const auto spec = LandscapeSpec::grating_study_instance(10);
  for (double theta = 0.0; theta < pi; theta += 0.3) {
    const auto phi = front.phases(theta, 0.7);
    const auto f = eval_grating_problem(phi, spec);
    CHECK(front.contains(f));
    CHECK(f[0] == Approx(front.point(theta)[0]));
  }
  const auto pts = front.sample(5);
  REQUIRE(pts.size() == 5);
  CHECK(pts.front()[0] < pts.back()[0]);

  CHECK_THROWS_AS(grating_true_front(10, 1.0, 3.0), NotImplementedError);
  CHECK_THROWS_AS(grating_true_front(LandscapeSpec::diffraction_grating(10, {0.0, 0.3})), NotImplementedError);
}

TEST_CASE("grating perceived mean") {
  const std::vector<double> zeros(10, 0.0);
  CHECK(grating_perceived_mean(0.0, zeros, 1, 4, 0.01) ==
        Approx(std::exp(-0.01) + (1 - std::exp(-0.01)) / 10).epsilon(1e-12));
  CHECK(grating_perceived_mean(0.0, zeros, 1, 4, 0.01) == Approx(0.9910448).epsilon(1e-7));
  CHECK(grating_perceived_mean(0.7, zeros, 1, 4, 1e4) == Approx(sinc2(0.35) / 10));

  RandomStream rng(3);
  std::vector<double> phi(6);
  for (auto& p : phi) p = rng.uniform(0, 2 * pi);
  CHECK(grating_perceived_mean(0.4, phi, 1, 4, 0.0) == Approx(eval_grating_intensity(0.4, phi, 1, 4)));
  double mean = 0.0, second = 0.0;
  oracle::raw_sum_moments(0.4, phi, 4.0, 0.03, mean, second);
  CHECK(grating_perceived_mean(0.4, phi, 1, 4, 0.03) == Approx(sinc2(0.2) * mean / 36.0));
}

TEST_CASE("grating perceived variance against the characteristic-function oracle") {
  const std::vector<double> pair{0, 0};
  CHECK(grating_perceived_variance(0.0, pair, 1, 4, 0.01) == Approx(std::pow(1 - std::exp(-0.02), 2) / 8));
  CHECK(grating_perceived_variance(0.0, pair, 1, 4, 0.01) == Approx(4.9012e-5).epsilon(1e-4));
  CHECK(grating_perceived_variance(0.0, pair, 1, 4, 0.0) == Approx(0.0));

  RandomStream rng(17);
  for (int n : {2, 3, 5, 7}) {
    for (double eps2 : {0.001, 0.02, 0.3}) {
      std::vector<double> phi(static_cast<std::size_t>(n));
      for (auto& p : phi) p = rng.uniform(0, 2 * pi);
      const double q = rng.uniform(-1, 1);
      double mean = 0.0, second = 0.0;
      oracle::raw_sum_moments(q, phi, 4.0, eps2, mean, second);
      const double raw_var = second - mean * mean;
      CHECK(grating_raw_variance(q, phi, 4.0, eps2) == Approx(raw_var).epsilon(1e-9).scale(1.0));
      const auto bounds = grating_raw_variance_bounds(n, eps2);
      CHECK(raw_var <= bounds.general + 1e-12);
    }
  }
  std::vector<double> phi5(5);
  for (auto& p : phi5) p = rng.uniform(0, 2 * pi);
  CHECK(grating_raw_variance(0.3, phi5, 4.0, 0.02) <= 6.4);
  CHECK(grating_raw_variance_bounds(5, 0.02).small_noise == Approx(6.4));
}

TEST_CASE("decision noise") {
  RandomStream rng(8);
  const std::vector<double> x{0.5, -1.0};
  CHECK(apply_decision_noise(x, NoiseModel::none(), rng) == x);
  CHECK(apply_decision_noise(x, NoiseModel::gaussian(0.0), rng) == x);

  const double eps2 = 0.04;
  const int k = 100000;
  double s0 = 0.0, s00 = 0.0;
  for (int i = 0; i < k; ++i) {
    const double d = apply_decision_noise(x, NoiseModel::gaussian(eps2), rng)[0] - x[0];
    s0 += d;
    s00 += d * d;
  }
  CHECK(std::abs(s0 / k) < 3 * std::sqrt(eps2 / k));
  CHECK(std::abs(s00 / k - eps2) < 0.05 * eps2);

  const auto spec = LandscapeSpec::multi_sphere(10, 2, NoiseModel::gaussian(0.01));
  std::vector<double> c1(10, 0.0);
  c1[0] = 1.0;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < k; ++i) {
    const double v = noisy_evaluate(spec, c1, rng)[0];
    sum += v;
    sq += v * v;
  }
  const double mean = sum / k;
  const double se = std::sqrt((sq / k - mean * mean) / k);
  CHECK(std::abs(mean - 0.1) < 3 * se);

  const auto clean = LandscapeSpec::grating_study_instance(4);
  const std::vector<double> phi{0.1, 0.2, 0.3, 0.4};
  CHECK(noisy_evaluate(clean, phi, rng) == evaluate(clean, phi));
}

TEST_CASE("spec validation and labels") {
  CHECK(LandscapeSpec::multi_sphere(10).label() == "sphere-m2-n10");
  CHECK(LandscapeSpec::grating_study_instance(30).label() == "grating-m2-n30");
  auto bad = LandscapeSpec::multi_sphere(3);
  bad.bounds.pop_back();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK(default_reference_point(LandscapeSpec::multi_sphere(3)).values == std::vector<double>{2, 2});
}
