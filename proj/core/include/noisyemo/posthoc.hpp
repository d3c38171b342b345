#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "noisyemo/indicators.hpp"
#include "noisyemo/landscapes.hpp"
#include "noisyemo/optimizers.hpp"
#include "noisyemo/random.hpp"

namespace noisyemo {

struct IdealSet {
  /// Noise-free objectives of every archived genotype, in archive order.
  std::vector<ObjectiveVector> all;
  /// Non-dominated subset of `all` (kind = ideal).
  FrontRecord front;
};

/// Evaluates every genotype without noise.
IdealSet reevaluate_ideal(std::span<const DecisionVector> genotypes, const LandscapeSpec& spec);
IdealSet reevaluate_ideal(const Archive& archive, const LandscapeSpec& spec);

struct SampleCloud {
  std::size_t source_index = 0;
  std::vector<ObjectiveVector> draws;
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;  // unbiased sample covariance
};

/// k independent evaluations of x under decision noise of variance eps2.
/// Throws std::invalid_argument for k < 2.
SampleCloud sample_cloud(std::span<const double> x, const LandscapeSpec& spec, double eps2, int k, RandomStream& rng,
                         std::size_t source_index = 0);

struct Ellipse {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  /// Semi-axes, twice the standard deviations along the principal directions.
  std::array<double, 2> axes{0.0, 0.0};
  /// Columns are the principal directions belonging to `axes`.
  Eigen::Matrix2d orientation = Eigen::Matrix2d::Identity();

  /// Angle of the first principal direction against the f1 axis, radians.
  double angle() const;
};

/// Principal axes of the empirical covariance, largest first.
/// Throws NotImplementedError unless m = 2.
Ellipse disturbance_ellipse(const SampleCloud& cloud);

/// Axis-aligned ellipse from closed-form per-objective moments of x under
/// noise eps2 (no covariance term is available analytically).
Ellipse disturbance_ellipse(std::span<const double> x, const LandscapeSpec& spec, double eps2);

/// Per-objective closed-form perceived moments of x under noise eps2.
std::vector<Moments> perceived_moments(std::span<const double> x, const LandscapeSpec& spec, double eps2);

/// Non-dominated subset of all pooled draws (kind = sampled).
FrontRecord reconstruct_front(std::span<const SampleCloud> clouds);

/// Connected components under single linkage with Euclidean threshold tol.
/// Throws std::invalid_argument for tol <= 0.
int cluster_count(std::span<const ObjectiveVector> points, double tol = 0.05);

}  // namespace noisyemo
