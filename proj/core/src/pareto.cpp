#include "noisyemo/pareto.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "noisyemo/indicators.hpp"

namespace noisyemo {

namespace {

void require_compatible(std::span<const ObjectiveVector> points) {
  if (points.empty()) return;
  const auto& first = points.front();
  for (const auto& p : points) {
    if (p.size() != first.size()) throw std::invalid_argument("objective vectors have mixed dimensions");
    if (p.senses != first.senses) throw std::invalid_argument("objective vectors have mixed senses");
  }
}

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
  return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
}

std::vector<int> sort_2d(const std::vector<std::vector<double>>& c) {
  std::vector<std::size_t> order(c.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lex_less(c[a], c[b]); });
  std::vector<int> ranks(c.size(), 0);
  std::vector<std::size_t> last;  // last member of each front
  for (std::size_t idx : order) {
    const auto& p = c[idx];
    std::size_t f = 0;
    for (; f < last.size(); ++f) {
      const auto& tail = c[last[f]];
      const bool same = tail[0] == p[0] && tail[1] == p[1];
      if (same || tail[1] > p[1]) break;
    }
    if (f == last.size()) {
      last.push_back(idx);
    } else {
      last[f] = idx;
    }
    ranks[idx] = static_cast<int>(f);
  }
  return ranks;
}

bool canonical_dominates(const std::vector<double>& a, const std::vector<double>& b) {
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

std::vector<int> sort_generic(const std::vector<std::vector<double>>& c) {
  const std::size_t n = c.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<int> counter(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (canonical_dominates(c[i], c[j])) {
        dominated[i].push_back(j);
        ++counter[j];
      } else if (canonical_dominates(c[j], c[i])) {
        dominated[j].push_back(i);
        ++counter[i];
      }
    }
  }
  std::vector<int> ranks(n, 0);
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (counter[i] == 0) current.push_back(i);
  }
  int rank = 0;
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      ranks[i] = rank;
      for (std::size_t j : dominated[i]) {
        if (--counter[j] == 0) next.push_back(j);
      }
    }
    current = std::move(next);
    ++rank;
  }
  return ranks;
}

// Sorted (lexicographic) in-box 2-D front with neighbor links. Valid when the
// in-box points are mutually non-dominated, which holds for any rank level.
struct LinkedFront2D {
  std::vector<std::size_t> order;  // input indices, sorted
  std::vector<long> prev, next;    // positions in `order`, -1 for none
  double r0, r1;
  const std::vector<std::vector<double>>* c;

  double contribution(long pos) const {
    const auto& p = (*c)[order[static_cast<std::size_t>(pos)]];
    const double right = next[static_cast<std::size_t>(pos)] < 0
                             ? r0
                             : (*c)[order[static_cast<std::size_t>(next[static_cast<std::size_t>(pos)])]][0];
    const double up = prev[static_cast<std::size_t>(pos)] < 0
                          ? r1
                          : (*c)[order[static_cast<std::size_t>(prev[static_cast<std::size_t>(pos)])]][1];
    return (right - p[0]) * (up - p[1]);
  }
};

bool in_box(const std::vector<double>& p, std::span<const double> ref) {
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (!(p[i] < ref[i])) return false;
  }
  return true;
}

std::vector<double> canonical_ref(const ObjectiveVector& ref) {
  std::vector<double> r(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) r[i] = ref.canonical(i);
  return r;
}

// Builds the linked 2-D structure; returns false when in-box points are not
// mutually non-dominated.
bool build_linked(const std::vector<std::vector<double>>& c, std::span<const double> ref, LinkedFront2D& out,
                  std::vector<long>& position_of) {
  out.c = &c;
  out.r0 = ref[0];
  out.r1 = ref[1];
  position_of.assign(c.size(), -1);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (in_box(c[i], ref)) out.order.push_back(i);
  }
  std::stable_sort(out.order.begin(), out.order.end(),
                   [&](std::size_t a, std::size_t b) { return lex_less(c[a], c[b]); });
  const auto k = static_cast<long>(out.order.size());
  out.prev.resize(static_cast<std::size_t>(k));
  out.next.resize(static_cast<std::size_t>(k));
  for (long i = 0; i < k; ++i) {
    out.prev[static_cast<std::size_t>(i)] = i - 1;
    out.next[static_cast<std::size_t>(i)] = (i + 1 < k) ? i + 1 : -1;
    position_of[out.order[static_cast<std::size_t>(i)]] = i;
    if (i > 0) {
      const auto& a = c[out.order[static_cast<std::size_t>(i - 1)]];
      const auto& b = c[out.order[static_cast<std::size_t>(i)]];
      const bool same = a[0] == b[0] && a[1] == b[1];
      if (!same && !(b[1] < a[1])) return false;
    }
  }
  return true;
}

std::vector<double> contributions_generic(const std::vector<std::vector<double>>& c, std::span<const double> ref) {
  const double total = hypervolume_canonical(c, ref);
  std::vector<double> out(c.size(), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!in_box(c[i], ref)) continue;
    std::vector<std::vector<double>> rest;
    rest.reserve(c.size() - 1);
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j != i) rest.push_back(c[j]);
    }
    out[i] = std::max(0.0, total - hypervolume_canonical(std::move(rest), ref));
  }
  return out;
}

}  // namespace

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dominates: dimension mismatch");
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a.canonical(i), y = b.canonical(i);
    if (x > y) return false;
    if (x < y) strict = true;
  }
  return strict;
}

bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("weakly_dominates: dimension mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.canonical(i) > b.canonical(i)) return false;
  }
  return true;
}

bool weakly_dominates(std::span<const ObjectiveVector> a, std::span<const ObjectiveVector> b) {
  return std::all_of(b.begin(), b.end(), [&](const ObjectiveVector& q) {
    return std::any_of(a.begin(), a.end(), [&](const ObjectiveVector& p) { return weakly_dominates(p, q); });
  });
}

std::vector<int> nondominated_sort(std::span<const ObjectiveVector> points) {
  require_compatible(points);
  if (points.empty()) return {};
  const auto c = canonical_points(points);
  return points.front().size() == 2 ? sort_2d(c) : sort_generic(c);
}

std::vector<std::vector<std::size_t>> fronts_from_ranks(std::span<const int> ranks) {
  std::vector<std::vector<std::size_t>> fronts;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    const auto r = static_cast<std::size_t>(ranks[i]);
    if (fronts.size() <= r) fronts.resize(r + 1);
    fronts[r].push_back(i);
  }
  return fronts;
}

std::vector<std::size_t> nondominated_indices(std::span<const ObjectiveVector> points) {
  const auto ranks = nondominated_sort(points);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] == 0) out.push_back(i);
  }
  return out;
}

std::vector<double> hv_contribution(std::span<const ObjectiveVector> front, const ObjectiveVector& ref) {
  if (front.empty()) return {};
  require_compatible(front);
  if (front.front().size() != ref.size() || front.front().senses != ref.senses) {
    throw std::invalid_argument("hv_contribution: reference does not match the front");
  }
  const auto c = canonical_points(front);
  const auto r = canonical_ref(ref);
  if (r.size() == 2) {
    LinkedFront2D linked;
    std::vector<long> position_of;
    if (build_linked(c, r, linked, position_of)) {
      std::vector<double> out(c.size(), 0.0);
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (position_of[i] >= 0) out[i] = linked.contribution(position_of[i]);
      }
      return out;
    }
  }
  return contributions_generic(c, r);
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> front) {
  const std::size_t k = front.size();
  std::vector<double> distance(k, 0.0);
  if (k == 0) return distance;
  if (k <= 2) {
    std::fill(distance.begin(), distance.end(), std::numeric_limits<double>::infinity());
    return distance;
  }
  const std::size_t m = front.front().size();
  std::vector<std::size_t> order(k);
  for (std::size_t obj = 0; obj < m; ++obj) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return front[a][obj] < front[b][obj]; });
    const double lo = front[order.front()][obj];
    const double hi = front[order.back()][obj];
    distance[order.front()] = std::numeric_limits<double>::infinity();
    distance[order.back()] = std::numeric_limits<double>::infinity();
    if (hi == lo) continue;
    for (std::size_t i = 1; i + 1 < k; ++i) {
      distance[order[i]] += (front[order[i + 1]][obj] - front[order[i - 1]][obj]) / (hi - lo);
    }
  }
  return distance;
}

std::vector<std::size_t> remove_least_contributors(std::span<const ObjectiveVector> front,
                                                   std::span<const long> birth, const ObjectiveVector& ref,
                                                   std::size_t count) {
  const std::size_t k = front.size();
  if (birth.size() != k) throw std::invalid_argument("remove_least_contributors: one birth value per point");
  count = std::min(count, k);
  std::vector<std::size_t> removed;
  if (count == 0) return removed;

  auto worse = [&](std::size_t a, double ca, std::size_t b, double cb) {
    if (ca != cb) return ca < cb;
    if (birth[a] != birth[b]) return birth[a] < birth[b];
    return a < b;
  };

  const auto c = canonical_points(front);
  const auto r = canonical_ref(ref);
  std::vector<bool> alive(k, true);

  LinkedFront2D linked;
  std::vector<long> position_of;
  if (r.size() == 2 && build_linked(c, r, linked, position_of)) {
    std::vector<double> contrib(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      if (position_of[i] >= 0) contrib[i] = linked.contribution(position_of[i]);
    }
    while (removed.size() < count) {
      std::size_t victim = k;
      for (std::size_t i = 0; i < k; ++i) {
        if (!alive[i]) continue;
        if (victim == k || worse(i, contrib[i], victim, contrib[victim])) victim = i;
      }
      alive[victim] = false;
      removed.push_back(victim);
      const long pos = position_of[victim];
      if (pos < 0) continue;
      const long p = linked.prev[static_cast<std::size_t>(pos)];
      const long nx = linked.next[static_cast<std::size_t>(pos)];
      if (p >= 0) linked.next[static_cast<std::size_t>(p)] = nx;
      if (nx >= 0) linked.prev[static_cast<std::size_t>(nx)] = p;
      if (p >= 0) contrib[linked.order[static_cast<std::size_t>(p)]] = linked.contribution(p);
      if (nx >= 0) contrib[linked.order[static_cast<std::size_t>(nx)]] = linked.contribution(nx);
    }
    return removed;
  }

  while (removed.size() < count) {
    std::vector<std::size_t> idx;
    std::vector<std::vector<double>> rest;
    for (std::size_t i = 0; i < k; ++i) {
      if (alive[i]) {
        idx.push_back(i);
        rest.push_back(c[i]);
      }
    }
    const auto contrib = contributions_generic(rest, r);
    std::size_t best = 0;
    for (std::size_t j = 1; j < idx.size(); ++j) {
      if (worse(idx[j], contrib[j], idx[best], contrib[best])) best = j;
    }
    alive[idx[best]] = false;
    removed.push_back(idx[best]);
  }
  return removed;
}

std::vector<std::size_t> select_by_rank_and_contribution(std::span<const ObjectiveVector> pool,
                                                         std::span<const long> birth, const ObjectiveVector& ref,
                                                         std::size_t keep) {
  if (birth.size() != pool.size()) throw std::invalid_argument("select_by_rank_and_contribution: birth size");
  std::vector<std::size_t> survivors;
  if (keep >= pool.size()) {
    survivors.resize(pool.size());
    std::iota(survivors.begin(), survivors.end(), std::size_t{0});
    return survivors;
  }
  const auto ranks = nondominated_sort(pool);
  const auto fronts = fronts_from_ranks(ranks);
  for (const auto& front : fronts) {
    if (survivors.size() + front.size() <= keep) {
      survivors.insert(survivors.end(), front.begin(), front.end());
      if (survivors.size() == keep) break;
      continue;
    }
    std::vector<ObjectiveVector> pts;
    std::vector<long> births;
    for (std::size_t i : front) {
      pts.push_back(pool[i]);
      births.push_back(birth[i]);
    }
    const auto removed = remove_least_contributors(pts, births, ref, survivors.size() + front.size() - keep);
    std::vector<bool> drop(front.size(), false);
    for (std::size_t j : removed) drop[j] = true;
    for (std::size_t j = 0; j < front.size(); ++j) {
      if (!drop[j]) survivors.push_back(front[j]);
    }
    break;
  }
  std::sort(survivors.begin(), survivors.end());
  return survivors;
}

}  // namespace noisyemo
