#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "noisyemo/types.hpp"

namespace noisyemo {

/// a Pareto-dominates b: no worse in every objective, strictly better in one.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);
/// a is no worse than b in every objective.
bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b);
/// Every point of `b` is weakly dominated by some point of `a`.
bool weakly_dominates(std::span<const ObjectiveVector> a, std::span<const ObjectiveVector> b);

/// Domination rank of every point: 0 for the non-dominated set, k for the set
/// that becomes non-dominated once ranks < k are removed.
/// Throws std::invalid_argument when dimensions or senses differ.
std::vector<int> nondominated_sort(std::span<const ObjectiveVector> points);

/// Indices grouped by rank, ascending; indices inside a front keep input order.
std::vector<std::vector<std::size_t>> fronts_from_ranks(std::span<const int> ranks);

/// Indices of the non-dominated points, in input order.
std::vector<std::size_t> nondominated_indices(std::span<const ObjectiveVector> points);

/// Hypervolume lost when each point is removed: HV(front) - HV(front \ {i}).
/// Points not strictly better than `ref` get 0; duplicates get 0.
std::vector<double> hv_contribution(std::span<const ObjectiveVector> front, const ObjectiveVector& ref);

/// NSGA-II crowding distance within one front; boundary points get +inf.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> front);

/// Removes `count` members of `front` one at a time, each time dropping the
/// member with the least hypervolume contribution (recomputed after every
/// removal). Ties go to the smaller `birth` value, then the smaller index.
/// Returns the removed indices in removal order.
std::vector<std::size_t> remove_least_contributors(std::span<const ObjectiveVector> front,
                                                   std::span<const long> birth, const ObjectiveVector& ref,
                                                   std::size_t count);

/// Environmental selection by (rank, hypervolume contribution): returns the
/// indices of the `keep` survivors of `pool`, ascending.
std::vector<std::size_t> select_by_rank_and_contribution(std::span<const ObjectiveVector> pool,
                                                         std::span<const long> birth, const ObjectiveVector& ref,
                                                         std::size_t keep);

}  // namespace noisyemo
