#include "noisyemo/posthoc.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "noisyemo/pareto.hpp"

namespace noisyemo {

IdealSet reevaluate_ideal(std::span<const DecisionVector> genotypes, const LandscapeSpec& spec) {
  const auto clean = spec.without_noise();
  IdealSet out;
  out.all.reserve(genotypes.size());
  for (const auto& x : genotypes) out.all.push_back(evaluate(clean, x));
  out.front = FrontRecord::make(out.all, FrontKind::ideal, "reevaluate_ideal");
  return out;
}

IdealSet reevaluate_ideal(const Archive& archive, const LandscapeSpec& spec) {
  std::vector<DecisionVector> xs;
  xs.reserve(archive.members.size());
  for (const auto& m : archive.members) xs.push_back(m.x);
  return reevaluate_ideal(xs, spec);
}

SampleCloud sample_cloud(std::span<const double> x, const LandscapeSpec& spec, double eps2, int k, RandomStream& rng,
                         std::size_t source_index) {
  if (k < 2) throw std::invalid_argument("sample_cloud: k must be >= 2");
  if (eps2 < 0.0) throw std::invalid_argument("sample_cloud: eps2 must be >= 0");
  LandscapeSpec noisy = spec;
  noisy.noise = NoiseModel::gaussian(eps2);
  SampleCloud cloud;
  cloud.source_index = source_index;
  cloud.draws.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cloud.draws.push_back(noisy_evaluate(noisy, x, rng));

  const auto m = static_cast<Eigen::Index>(spec.m);
  cloud.mean = Eigen::VectorXd::Zero(m);
  for (const auto& d : cloud.draws) cloud.mean += Eigen::Map<const Eigen::VectorXd>(d.values.data(), m);
  cloud.mean /= static_cast<double>(k);
  cloud.covariance = Eigen::MatrixXd::Zero(m, m);
  for (const auto& d : cloud.draws) {
    const Eigen::VectorXd c = Eigen::Map<const Eigen::VectorXd>(d.values.data(), m) - cloud.mean;
    cloud.covariance += c * c.transpose();
  }
  cloud.covariance /= static_cast<double>(k - 1);
  return cloud;
}

double Ellipse::angle() const { return std::atan2(orientation(1, 0), orientation(0, 0)); }

Ellipse disturbance_ellipse(const SampleCloud& cloud) {
  if (cloud.mean.size() != 2) throw NotImplementedError("disturbance ellipses need exactly two objectives");
  Ellipse e;
  e.center = cloud.mean;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(Eigen::Matrix2d(cloud.covariance));
  const auto& values = eig.eigenvalues();  // ascending
  const auto& vectors = eig.eigenvectors();
  e.axes = {2.0 * std::sqrt(std::max(values[1], 0.0)), 2.0 * std::sqrt(std::max(values[0], 0.0))};
  e.orientation.col(0) = vectors.col(1);
  e.orientation.col(1) = vectors.col(0);
  return e;
}

std::vector<Moments> perceived_moments(std::span<const double> x, const LandscapeSpec& spec, double eps2) {
  std::vector<Moments> out;
  const auto f = evaluate(spec.without_noise(), x);
  for (int i = 0; i < spec.m; ++i) {
    if (spec.family == Family::multi_sphere) {
      out.push_back(multisphere_perceived_moments(f[static_cast<std::size_t>(i)], spec.n, eps2));
    } else {
      const double q = spec.positions[static_cast<std::size_t>(i)];
      out.push_back({grating_perceived_mean(q, x, spec.slit_width, spec.slit_spacing, eps2),
                     grating_perceived_variance(q, x, spec.slit_width, spec.slit_spacing, eps2)});
    }
  }
  return out;
}

Ellipse disturbance_ellipse(std::span<const double> x, const LandscapeSpec& spec, double eps2) {
  if (spec.m != 2) throw NotImplementedError("disturbance ellipses need exactly two objectives");
  const auto mom = perceived_moments(x, spec, eps2);
  Ellipse e;
  e.center = {mom[0].mean, mom[1].mean};
  e.axes = {2.0 * std::sqrt(std::max(mom[0].variance, 0.0)), 2.0 * std::sqrt(std::max(mom[1].variance, 0.0))};
  return e;
}

FrontRecord reconstruct_front(std::span<const SampleCloud> clouds) {
  std::vector<ObjectiveVector> pooled;
  for (const auto& c : clouds) pooled.insert(pooled.end(), c.draws.begin(), c.draws.end());
  FrontRecord record;
  record.kind = FrontKind::sampled;
  record.provenance = "reconstruct_front";
  if (pooled.empty()) return record;
  const auto keep = nondominated_indices(pooled);
  record.pruned = pooled.size() - keep.size();
  for (std::size_t i : keep) record.points.push_back(pooled[i]);
  return record;
}

int cluster_count(std::span<const ObjectiveVector> points, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("cluster_count: tol must be > 0");
  const std::size_t k = points.size();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  int components = static_cast<int>(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      double d2 = 0.0;
      for (std::size_t c = 0; c < points[i].size(); ++c) d2 += (points[i][c] - points[j][c]) * (points[i][c] - points[j][c]);
      if (d2 <= tol * tol) {
        const auto a = find(i), b = find(j);
        if (a != b) {
          parent[a] = b;
          --components;
        }
      }
    }
  }
  return components;
}

}  // namespace noisyemo
