#include "noisyemo/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "noisyemo/pareto.hpp"

namespace noisyemo {

std::string to_string(FrontKind kind) {
  switch (kind) {
    case FrontKind::perceived: return "perceived";
    case FrontKind::ideal: return "ideal";
    case FrontKind::sampled: return "sampled";
    case FrontKind::analytic: return "analytic";
  }
  return "unknown";
}

FrontKind front_kind_from_string(const std::string& text) {
  if (text == "perceived") return FrontKind::perceived;
  if (text == "ideal") return FrontKind::ideal;
  if (text == "sampled") return FrontKind::sampled;
  if (text == "analytic") return FrontKind::analytic;
  throw std::invalid_argument("unknown front kind '" + text + "'");
}

FrontRecord FrontRecord::make(std::vector<ObjectiveVector> points, FrontKind kind, std::string provenance) {
  FrontRecord record;
  record.kind = kind;
  record.provenance = std::move(provenance);
  if (kind == FrontKind::sampled || points.empty()) {
    record.points = std::move(points);
    return record;
  }
  const auto keep = nondominated_indices(points);
  record.pruned = points.size() - keep.size();
  record.points.reserve(keep.size());
  for (std::size_t i : keep) record.points.push_back(std::move(points[i]));
  return record;
}

double delta_v(double v_ref, double v) {
  if (!(v_ref > 0.0)) throw std::invalid_argument("delta_v: reference hypervolume must be > 0");
  return (v_ref - v) / v_ref;
}

DeltaD delta_d(std::span<const ObjectiveVector> front, std::span<const ObjectiveVector> reference) {
  if (front.size() != reference.size()) throw std::invalid_argument("delta_d: population sizes differ");
  auto sorted = [](std::span<const ObjectiveVector> pts) {
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pts[a][0] < pts[b][0]; });
    return order;
  };
  const auto fo = sorted(front);
  const auto ro = sorted(reference);
  DeltaD out;
  for (std::size_t k = 0; k < fo.size(); ++k) {
    const auto& f = front[fo[k]];
    const auto& p = reference[ro[k]];
    if (f.size() != p.size()) throw std::invalid_argument("delta_d: dimension mismatch");
    double dist2 = 0.0, norm2 = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      dist2 += (f[i] - p[i]) * (f[i] - p[i]);
      norm2 += p[i] * p[i];
    }
    if (norm2 == 0.0) {
      ++out.excluded;
      continue;
    }
    out.value += dist2 / std::sqrt(norm2);
  }
  return out;
}

DeltaD delta_d(const FrontRecord& front, const FrontRecord& reference) {
  return delta_d(std::span<const ObjectiveVector>(front.points), std::span<const ObjectiveVector>(reference.points));
}

}  // namespace noisyemo
