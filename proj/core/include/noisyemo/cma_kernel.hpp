#pragma once

#include <span>

#include <Eigen/Dense>

#include "noisyemo/random.hpp"
#include "noisyemo/types.hpp"

namespace noisyemo {

/// Strategy constants of the elitist (1+1)-CMA kernel.
struct KernelParameters {
  double target_success = 0.1818;  // p_target
  double success_smoothing = 1.0 / 12.0;  // c_p
  double damping = 0.0;           // d
  double path_rate = 0.0;         // c_c
  double covariance_rate = 0.0;   // c_cov
  double success_threshold = 0.44;  // p_thresh

  /// Defaults for dimension n: d = 1 + n/2, c_c = 2/(n+2), c_cov = 2/(n^2+6).
  static KernelParameters defaults(int n);
  void validate() const;
};

struct KernelState {
  DecisionVector x;
  double sigma = 1.0;
  Eigen::MatrixXd covariance;
  Eigen::MatrixXd cholesky;  // lower factor, covariance = L L^T
  double success_rate = 0.0;
  Eigen::VectorXd path;

  int dimension() const noexcept { return static_cast<int>(x.size()); }
};

/// C = I, p_c = 0, p_succ = p_target. Throws std::invalid_argument for sigma0 <= 0.
KernelState kernel_init(DecisionVector x0, double sigma0, const KernelParameters& params);

/// x + sigma L z with z standard normal.
DecisionVector kernel_sample(const KernelState& state, RandomStream& rng);

/// Success-rate smoothing followed by the step-size rule.
void update_step_size(KernelState& state, bool succeeded, const KernelParameters& params);

/// Evolution-path and rank-one covariance update for a successful step
/// `step` = (offspring - parent) / sigma. Refactors the Cholesky factor.
void update_covariance(KernelState& state, std::span<const double> step, const KernelParameters& params);

/// Full (1+1)-CMA update: on success the parent moves to x + sigma * step,
/// then step size, then (on success) covariance.
void kernel_update(KernelState& state, bool succeeded, std::span<const double> step, const KernelParameters& params);

/// Max |C - C^T|.
double symmetry_error(const KernelState& state);

}  // namespace noisyemo
