#include "noisyemo/cma_kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace noisyemo {

KernelParameters KernelParameters::defaults(int n) {
  KernelParameters p;
  const double nn = static_cast<double>(n);
  p.damping = 1.0 + nn / 2.0;
  p.path_rate = 2.0 / (nn + 2.0);
  p.covariance_rate = 2.0 / (nn * nn + 6.0);
  return p;
}

void KernelParameters::validate() const {
  auto in_unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (!in_unit(target_success) || !in_unit(success_smoothing) || !in_unit(path_rate) ||
      !(covariance_rate > 0.0 && covariance_rate < 1.0) || !(damping > 0.0) || !(success_threshold > 0.0)) {
    throw std::invalid_argument("invalid CMA kernel parameters");
  }
}

namespace {

void refactor(KernelState& state) {
  state.covariance = 0.5 * (state.covariance + state.covariance.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(state.covariance);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("CMA kernel covariance lost positive definiteness");
  }
  state.cholesky = llt.matrixL();
}

}  // namespace

KernelState kernel_init(DecisionVector x0, double sigma0, const KernelParameters& params) {
  if (!(sigma0 > 0.0)) throw std::invalid_argument("kernel_init: sigma0 must be > 0");
  if (x0.empty()) throw std::invalid_argument("kernel_init: empty decision vector");
  const auto n = static_cast<Eigen::Index>(x0.size());
  KernelState s;
  s.x = std::move(x0);
  s.sigma = sigma0;
  s.covariance = Eigen::MatrixXd::Identity(n, n);
  s.cholesky = Eigen::MatrixXd::Identity(n, n);
  s.success_rate = params.target_success;
  s.path = Eigen::VectorXd::Zero(n);
  return s;
}

DecisionVector kernel_sample(const KernelState& state, RandomStream& rng) {
  const auto n = static_cast<Eigen::Index>(state.x.size());
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z[i] = rng.normal();
  const Eigen::VectorXd y = state.cholesky.triangularView<Eigen::Lower>() * z;
  DecisionVector out(state.x);
  for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] += state.sigma * y[i];
  return out;
}

void update_step_size(KernelState& state, bool succeeded, const KernelParameters& params) {
  const double cp = params.success_smoothing;
  state.success_rate = (1.0 - cp) * state.success_rate + cp * (succeeded ? 1.0 : 0.0);
  state.sigma *= std::exp((state.success_rate - params.target_success) /
                          (params.damping * (1.0 - params.target_success)));
}

void update_covariance(KernelState& state, std::span<const double> step, const KernelParameters& params) {
  const auto n = static_cast<Eigen::Index>(state.x.size());
  if (static_cast<Eigen::Index>(step.size()) != n) throw std::invalid_argument("update_covariance: step dimension");
  const double cc = params.path_rate;
  const double ccov = params.covariance_rate;
  if (state.success_rate < params.success_threshold) {
    const Eigen::Map<const Eigen::VectorXd> y(step.data(), n);
    state.path = (1.0 - cc) * state.path + std::sqrt(cc * (2.0 - cc)) * y;
    state.covariance = (1.0 - ccov) * state.covariance + ccov * state.path * state.path.transpose();
  } else {
    state.path = (1.0 - cc) * state.path;
    state.covariance = (1.0 - ccov) * state.covariance +
                       ccov * (state.path * state.path.transpose() + cc * (2.0 - cc) * state.covariance);
  }
  refactor(state);
}

void kernel_update(KernelState& state, bool succeeded, std::span<const double> step, const KernelParameters& params) {
  if (succeeded) {
    if (step.size() != state.x.size()) throw std::invalid_argument("kernel_update: step dimension");
    for (std::size_t i = 0; i < state.x.size(); ++i) state.x[i] += state.sigma * step[i];
  }
  update_step_size(state, succeeded, params);
  if (succeeded) update_covariance(state, step, params);
}

double symmetry_error(const KernelState& state) {
  return (state.covariance - state.covariance.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace noisyemo
