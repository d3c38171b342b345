#include <algorithm>
#include <stdexcept>

#include "noisyemo/indicators.hpp"

namespace noisyemo {

namespace {

using Point = std::vector<double>;

// 2-D hypervolume of minimization points strictly inside the reference box.
double sweep_2d(std::vector<Point> pts, double r0, double r1) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  double volume = 0.0;
  double ceiling = r1;
  for (const auto& p : pts) {
    if (p[1] < ceiling) {
      volume += (r0 - p[0]) * (ceiling - p[1]);
      ceiling = p[1];
    }
  }
  return volume;
}

double sweep_3d(std::vector<Point> pts, std::span<const double> ref) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a[2] < b[2]; });
  double volume = 0.0;
  std::vector<Point> slice;
  slice.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    slice.push_back(pts[i]);
    const double next = (i + 1 < pts.size()) ? pts[i + 1][2] : ref[2];
    const double height = next - pts[i][2];
    if (height > 0.0) volume += sweep_2d(slice, ref[0], ref[1]) * height;
  }
  return volume;
}

}  // namespace

std::vector<std::vector<double>> canonical_points(std::span<const ObjectiveVector> points) {
  std::vector<std::vector<double>> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    std::vector<double> c(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) c[i] = p.canonical(i);
    out.push_back(std::move(c));
  }
  return out;
}

double hypervolume_canonical(std::vector<std::vector<double>> points, std::span<const double> ref) {
  const std::size_t m = ref.size();
  if (m > 3) throw NotImplementedError("hypervolume is implemented for m <= 3");
  if (m < 2) throw std::invalid_argument("hypervolume requires at least two objectives");
  std::erase_if(points, [&](const Point& p) {
    if (p.size() != m) throw std::invalid_argument("hypervolume: point dimension differs from reference");
    for (std::size_t i = 0; i < m; ++i) {
      if (!(p[i] < ref[i])) return true;
    }
    return false;
  });
  if (points.empty()) return 0.0;
  return m == 2 ? sweep_2d(std::move(points), ref[0], ref[1]) : sweep_3d(std::move(points), ref);
}

double hypervolume(std::span<const ObjectiveVector> front, const ObjectiveVector& ref) {
  if (ref.size() > 3) throw NotImplementedError("hypervolume is implemented for m <= 3");
  for (const auto& p : front) {
    if (p.size() != ref.size()) throw std::invalid_argument("hypervolume: point dimension differs from reference");
    if (p.senses != ref.senses) throw std::invalid_argument("hypervolume: point senses differ from reference senses");
  }
  std::vector<double> r(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) r[i] = ref.canonical(i);
  return hypervolume_canonical(canonical_points(front), r);
}

double hypervolume(const FrontRecord& front, const ObjectiveVector& ref) { return hypervolume(front.points, ref); }

}  // namespace noisyemo
