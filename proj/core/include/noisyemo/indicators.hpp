#pragma once

#include <span>
#include <string>
#include <vector>

#include "noisyemo/types.hpp"

namespace noisyemo {

enum class FrontKind { perceived, ideal, sampled, analytic };

std::string to_string(FrontKind kind);
FrontKind front_kind_from_string(const std::string& text);

/// A set of objective vectors with a tag describing where they came from.
struct FrontRecord {
  std::vector<ObjectiveVector> points;
  FrontKind kind = FrontKind::perceived;
  std::string provenance;
  /// Dominated members dropped by `make`.
  std::size_t pruned = 0;

  /// Builds a record; for perceived, ideal and analytic fronts dominated
  /// members are pruned (duplicates are kept) and counted in `pruned`.
  static FrontRecord make(std::vector<ObjectiveVector> points, FrontKind kind, std::string provenance = {});
};

/// Points mapped to minimization ("canonical") coordinates.
std::vector<std::vector<double>> canonical_points(std::span<const ObjectiveVector> points);

/// Lebesgue measure of the region dominated by `front` and bounded by `ref`.
/// Exact for m = 2 (sorted sweep) and m = 3 (dimension sweep over the third
/// objective with 2-D slices). Points not strictly better than `ref` in every
/// objective contribute nothing.
/// Throws NotImplementedError for m > 3 and std::invalid_argument when senses
/// or dimensions of points and reference disagree.
double hypervolume(std::span<const ObjectiveVector> front, const ObjectiveVector& ref);
double hypervolume(const FrontRecord& front, const ObjectiveVector& ref);

/// Same measure on canonical (minimization) coordinates.
double hypervolume_canonical(std::vector<std::vector<double>> points, std::span<const double> ref);

/// Relative hypervolume deterioration (v_ref - v) / v_ref.
double delta_v(double v_ref, double v);

struct DeltaD {
  double value = 0.0;
  /// Index pairs skipped because the reference point has zero norm.
  std::size_t excluded = 0;
};

/// Spatial-distribution discrepancy sum_k |f_k - p_k|^2 / |p_k| with both
/// sets sorted ascending by the first objective and paired by index.
DeltaD delta_d(const FrontRecord& front, const FrontRecord& reference);
DeltaD delta_d(std::span<const ObjectiveVector> front, std::span<const ObjectiveVector> reference);

}  // namespace noisyemo
