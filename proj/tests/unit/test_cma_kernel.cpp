#include <cmath>
#include <vector>

#include "doctest.h"
#include "noisyemo/cma_kernel.hpp"

using namespace noisyemo;
using doctest::Approx;

TEST_CASE("kernel initialization") {
  const auto p = KernelParameters::defaults(3);
  CHECK(p.damping == Approx(2.5));
  CHECK(p.path_rate == Approx(0.4));
  CHECK(p.covariance_rate == Approx(2.0 / 15.0));
  const auto s = kernel_init({1, 2, 3}, 1.0, p);
  CHECK(s.covariance.isIdentity());
  CHECK(s.cholesky.isIdentity());
  CHECK(s.path.isZero());
  CHECK(s.success_rate == Approx(p.target_success));
  CHECK_THROWS_AS(kernel_init({0.0}, 0.0, p), std::invalid_argument);
  CHECK_THROWS_AS(kernel_init({0.0}, -1.0, p), std::invalid_argument);
}

TEST_CASE("sampling moments follow sigma^2 C") {
  const auto p = KernelParameters::defaults(2);
  auto s = kernel_init({0.5, -0.5}, 0.3, p);
  RandomStream rng(1);
  const int k = 100000;
  double c00 = 0, c11 = 0, c01 = 0;
  for (int i = 0; i < k; ++i) {
    const auto y = kernel_sample(s, rng);
    const double a = (y[0] - 0.5) / 0.3, b = (y[1] + 0.5) / 0.3;
    c00 += a * a;
    c11 += b * b;
    c01 += a * b;
  }
  CHECK(c00 / k == Approx(1.0).epsilon(0.05));
  CHECK(c11 / k == Approx(1.0).epsilon(0.05));
  CHECK(std::abs(c01 / k) < 0.05);

  s.covariance << 4, 0, 0, 1;
  s.cholesky << 2, 0, 0, 1;
  c00 = c11 = 0;
  for (int i = 0; i < k; ++i) {
    const auto y = kernel_sample(s, rng);
    c00 += std::pow(y[0] - 0.5, 2);
    c11 += std::pow(y[1] + 0.5, 2);
  }
  CHECK(c00 / c11 == Approx(4.0).epsilon(0.1));

  s.sigma = 1e-12;
  const auto y = kernel_sample(s, rng);
  CHECK(std::abs(y[0] - 0.5) < 1e-10);
}

TEST_CASE("success rule") {
  const auto p = KernelParameters::defaults(5);
  auto s = kernel_init(std::vector<double>(5, 0.0), 0.5, p);
  s.success_rate = 0.5;
  update_step_size(s, true, p);
  CHECK(s.success_rate == Approx(11.0 / 12.0 * 0.5 + 1.0 / 12.0));
  CHECK(s.success_rate == Approx(0.54167).epsilon(1e-4));
  // sigma' = sigma exp((p - p_t) / (d (1 - p_t)))
  CHECK(s.sigma == Approx(0.5 * std::exp((s.success_rate - p.target_success) / (p.damping * (1 - p.target_success)))));

  // A failure that lands the smoothed rate exactly on the target leaves sigma unchanged.
  auto f = kernel_init(std::vector<double>(5, 0.0), 0.5, p);
  f.success_rate = p.target_success / (1.0 - p.success_smoothing);
  update_step_size(f, false, p);
  CHECK(f.success_rate == Approx(p.target_success));
  CHECK(f.sigma == Approx(0.5));

  auto g = kernel_init(std::vector<double>(5, 0.0), 0.5, p);
  double last = g.sigma;
  for (int i = 0; i < 20; ++i) {
    update_step_size(g, false, p);
    CHECK(g.sigma < last);
    last = g.sigma;
  }
}

TEST_CASE("covariance update") {
  const auto p = KernelParameters::defaults(3);
  auto s = kernel_init({0, 0, 0}, 1.0, p);
  const std::vector<double> step{1.0, 0.5, -0.25};
  update_covariance(s, step, p);
  // Below the threshold: p_c = (1-c_c) p_c + sqrt(c_c (2-c_c)) step, C = (1-c_cov) C + c_cov p_c p_c^T.
  const double g = std::sqrt(p.path_rate * (2 - p.path_rate));
  Eigen::Vector3d pc(g * 1.0, g * 0.5, g * -0.25);
  Eigen::Matrix3d expect = (1 - p.covariance_rate) * Eigen::Matrix3d::Identity() + p.covariance_rate * pc * pc.transpose();
  CHECK((s.path - pc).norm() < 1e-12);
  CHECK((s.covariance - expect).norm() < 1e-12);
  CHECK((s.cholesky * s.cholesky.transpose() - s.covariance).norm() < 1e-12);
  CHECK(symmetry_error(s) == 0.0);

  // Above the threshold the path is only decayed.
  s.success_rate = 0.9;
  const Eigen::VectorXd old_path = s.path;
  const Eigen::MatrixXd old_c = s.covariance;
  update_covariance(s, step, p);
  CHECK((s.path - (1 - p.path_rate) * old_path).norm() < 1e-12);
  Eigen::MatrixXd e2 = (1 - p.covariance_rate) * old_c +
                       p.covariance_rate * (s.path * s.path.transpose() + p.path_rate * (2 - p.path_rate) * old_c);
  CHECK((s.covariance - e2).norm() < 1e-12);

  RandomStream rng(4);
  auto k = kernel_init({0, 0, 0}, 1.0, p);
  for (int i = 0; i < 500; ++i) {
    const auto y = kernel_sample(k, rng);
    std::vector<double> st(3);
    for (int d = 0; d < 3; ++d) st[d] = (y[d] - k.x[d]) / k.sigma;
    kernel_update(k, i % 3 == 0, st, p);
  }
  CHECK(symmetry_error(k) < 1e-12);
  CHECK(k.covariance.llt().info() == Eigen::Success);
}
