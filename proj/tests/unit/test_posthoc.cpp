#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "noisyemo/pareto.hpp"
#include "noisyemo/posthoc.hpp"

using namespace noisyemo;
using doctest::Approx;

TEST_CASE("ideal re-evaluation") {
  const auto spec = LandscapeSpec::multi_sphere(3);
  const std::vector<DecisionVector> g{{1, 0, 0}, {0, 1, 0}, {2, 2, 2}};
  const auto ideal = reevaluate_ideal(g, spec);
  CHECK(ideal.all[0].values == std::vector<double>{0, 2});
  CHECK(ideal.front.points.size() == 2);
  CHECK(ideal.front.kind == FrontKind::ideal);

  auto cfg = OptimizerConfig::defaults(Algorithm::mo_cma, spec);
  cfg.mu = 8;
  cfg.lambda = 8;
  cfg.budget.generations = 5;
  const auto run = run_optimizer(cfg);
  const auto same = reevaluate_ideal(run.archive, spec);
  for (std::size_t i = 0; i < run.archive.members.size(); ++i) CHECK(same.all[i] == run.archive.members[i].perceived);
}

TEST_CASE("sample clouds") {
  const auto spec = LandscapeSpec::multi_sphere(10);
  DecisionVector c1(10, 0.0);
  c1[0] = 1.0;
  RandomStream rng(2);
  auto cloud = sample_cloud(c1, spec, 0.0, 5, rng);
  for (const auto& d : cloud.draws) CHECK(d == cloud.draws.front());
  CHECK(cloud.covariance.isZero());
  CHECK_THROWS_AS(sample_cloud(c1, spec, 0.01, 1, rng), std::invalid_argument);

  const int k = 100000;
  cloud = sample_cloud(c1, spec, 0.01, k, rng);
  const auto m0 = multisphere_perceived_moments(0.0, 10, 0.01);
  const auto m1 = multisphere_perceived_moments(2.0, 10, 0.01);
  CHECK(std::abs(cloud.mean[0] - 0.1) < 3 * std::sqrt(m0.variance / k));
  CHECK(std::abs(cloud.mean[1] - 2.1) < 3 * std::sqrt(m1.variance / k));

  const auto grating = LandscapeSpec::grating_study_instance(10);
  cloud = sample_cloud(DecisionVector(10, 0.0), grating, 0.01, k, rng);
  const double sd = std::sqrt(cloud.covariance(0, 0));
  CHECK(std::abs(cloud.mean[0] - 0.9910448) < 3 * sd / std::sqrt(k));
}

TEST_CASE("disturbance ellipses") {
  SampleCloud c;
  c.mean = Eigen::Vector2d(1, 2);
  c.covariance = Eigen::Matrix2d::Zero();
  auto e = disturbance_ellipse(c);
  CHECK(e.axes[0] == 0.0);
  CHECK(e.axes[1] == 0.0);
  c.covariance = Eigen::Vector2d(0.04, 0.01).asDiagonal();
  e = disturbance_ellipse(c);
  CHECK(e.axes[0] == Approx(0.4));
  CHECK(e.axes[1] == Approx(0.2));
  CHECK(std::abs(std::sin(e.angle())) < 1e-12);
  c.covariance = Eigen::Vector2d(0.01, 0.04).asDiagonal();
  CHECK(std::abs(std::cos(disturbance_ellipse(c).angle())) < 1e-12);
  c.mean = Eigen::Vector3d::Zero();
  c.covariance = Eigen::Matrix3d::Identity();
  CHECK_THROWS_AS(disturbance_ellipse(c), NotImplementedError);

  // The origin is at unit distance from both centers.
  const auto spec = LandscapeSpec::multi_sphere(10);
  const DecisionVector x(10, 0.0);
  e = disturbance_ellipse(x, spec, 0.01);
  CHECK(e.center[0] == Approx(1.1));
  CHECK(e.center[1] == Approx(1.1));
  CHECK(e.axes[0] == Approx(2 * std::sqrt(0.042)));
  CHECK(e.axes[1] == Approx(0.4099).epsilon(1e-4));
  RandomStream rng(5);
  const auto cloud = sample_cloud(x, spec, 0.01, 100000, rng);
  CHECK(cloud.covariance(0, 0) == Approx(0.042).epsilon(0.03));
}

TEST_CASE("front reconstruction") {
  const auto spec = LandscapeSpec::multi_sphere(2);
  RandomStream rng(1);
  std::vector<SampleCloud> one{sample_cloud(DecisionVector{0.5, 0.5}, spec, 0.0, 4, rng)};
  auto r = reconstruct_front(one);
  CHECK(r.kind == FrontKind::sampled);
  for (const auto& p : r.points) CHECK(p == minimize({0.5, 0.5}));

  SampleCloud a, b;
  a.draws = {minimize({0, 1}), minimize({0.5, 2})};
  b.draws = {minimize({1, 0}), minimize({2, 0.5})};
  std::vector<SampleCloud> two{a, b};
  r = reconstruct_front(two);
  CHECK(r.points.size() == 2);

  const auto noisy = LandscapeSpec::multi_sphere(4, 2, NoiseModel::gaussian(0.01));
  std::vector<SampleCloud> clouds;
  std::vector<ObjectiveVector> ideal;
  for (int i = 0; i < 10; ++i) {
    const double t = i / 9.0;
    const DecisionVector x{1 - t, t, 0.3, 0.3};
    clouds.push_back(sample_cloud(x, noisy, 0.01, 100, rng, static_cast<std::size_t>(i)));
    ideal.push_back(evaluate(noisy, x));
  }
  r = reconstruct_front(clouds);
  CHECK(r.points.size() <= 1000);
  CHECK(weakly_dominates(r.points, ideal));
}

TEST_CASE("cluster counting") {
  std::vector<ObjectiveVector> same(5, minimize({1, 1}));
  CHECK(cluster_count(same) == 1);
  CHECK(cluster_count(std::vector<ObjectiveVector>{minimize({0, 0}), minimize({0.15, 0})}, 0.05) == 2);
  // Single linkage chains points closer than tol.
  std::vector<ObjectiveVector> chain;
  for (int i = 0; i < 10; ++i) chain.push_back(minimize({0.04 * i, 0}));
  CHECK(cluster_count(chain, 0.05) == 1);
  CHECK_THROWS_AS(cluster_count(same, 0.0), std::invalid_argument);
}
