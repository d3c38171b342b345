#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "noisyemo/indicators.hpp"
#include "noisyemo/optimizers.hpp"
#include "noisyemo/variation.hpp"

using namespace noisyemo;
using doctest::Approx;

namespace {

OptimizerConfig small(Algorithm a, LandscapeSpec spec, int mu = 10) {
  auto cfg = OptimizerConfig::defaults(a, std::move(spec));
  cfg.mu = mu;
  cfg.lambda = a == Algorithm::sms_emoa ? 1 : mu;
  cfg.seed = 123;
  return cfg;
}

Individual member(ObjectiveVector f, long birth = 0) {
  Individual i;
  i.x = {0.0};
  i.perceived = std::move(f);
  i.birth_gen = birth;
  return i;
}

bool same_archive(const Archive& a, const Archive& b) {
  if (a.members.size() != b.members.size() || a.evaluations != b.evaluations) return false;
  for (std::size_t i = 0; i < a.members.size(); ++i) {
    if (a.members[i].x != b.members[i].x || a.members[i].perceived != b.members[i].perceived) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("defaults and validation") {
  const auto c = OptimizerConfig::defaults(Algorithm::mo_cma, LandscapeSpec::multi_sphere(10));
  CHECK(c.mu == 100);
  CHECK(c.lambda == 100);
  CHECK(c.reference_point.values == std::vector<double>{2, 2});
  CHECK(OptimizerConfig::defaults(Algorithm::sms_emoa, LandscapeSpec::multi_sphere(3)).lambda == 1);
  auto bad = c;
  bad.mu = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.reference_point = minimize({2, 2, 2});
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  CHECK(algorithm_from_string("nsga-ii") == Algorithm::nsga2);
  CHECK(scheme_from_string(to_string(Scheme::O)) == Scheme::O);
  CHECK_THROWS(algorithm_from_string("simplex"));
}

TEST_CASE("evaluation ledger per scheme") {
  const long G = 25;
  for (Scheme s : {Scheme::D, Scheme::E, Scheme::O}) {
    auto cfg = small(Algorithm::mo_cma, LandscapeSpec::multi_sphere(3, 2, NoiseModel::gaussian(0.01)), 6);
    cfg.scheme = s;
    cfg.budget.generations = G;
    const auto r = run_optimizer(cfg);
    const long mu = cfg.mu;
    const long expect = s == Scheme::D ? mu + mu * G : s == Scheme::E ? mu + 2 * mu * G : mu + mu * G + mu * (G / 10);
    CHECK(r.evaluations == expect);
    CHECK(r.generations == G);
    CHECK(r.archive.members.size() == static_cast<std::size_t>(mu));
    CHECK(r.trace.size() == static_cast<std::size_t>(G + 1));
  }
}

TEST_CASE("evaluation budget stops at a step boundary") {
  auto cfg = small(Algorithm::mo_cma, LandscapeSpec::multi_sphere(3), 10);
  cfg.scheme = Scheme::E;
  cfg.budget.evaluations = 10 + 20 * 4 + 15;
  const auto r = run_optimizer(cfg);
  CHECK(r.generations == 4);
  CHECK(r.evaluations == 90);

  cfg.budget.evaluations = 0;
  cfg.budget.generations = -1;
  const auto z = run_optimizer(cfg);
  CHECK(z.generations == 0);
  CHECK(z.evaluations == 10);
  CHECK(z.trace.size() == 1);
}

TEST_CASE("runs are deterministic in the seed") {
  for (Algorithm a : {Algorithm::mo_cma, Algorithm::sms_emoa, Algorithm::nsga2}) {
    auto cfg = small(a, LandscapeSpec::grating_study_instance(6, NoiseModel::gaussian(0.01)), 8);
    cfg.budget.evaluations = 400;
    const auto r1 = run_optimizer(cfg);
    const auto r2 = run_optimizer(cfg);
    CHECK(same_archive(r1.archive, r2.archive));
    REQUIRE(r1.trace.size() == r2.trace.size());
    for (std::size_t i = 0; i < r1.trace.size(); ++i) CHECK(r1.trace[i].hypervolume == r2.trace[i].hypervolume);
    cfg.seed = 124;
    CHECK_FALSE(same_archive(run_optimizer(cfg).archive, r1.archive));
  }
}

TEST_CASE("noise-free MO-CMA improves the bi-sphere hypervolume") {
  auto cfg = small(Algorithm::mo_cma, LandscapeSpec::multi_sphere(5), 20);
  cfg.budget.generations = 300;
  const auto r = run_optimizer(cfg);
  CHECK(r.final_hypervolume() > 3.0);
  // Greedy least-contributor removal is not exactly monotone, but drops stay small.
  double worst_drop = 0.0;
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    worst_drop = std::max(worst_drop, r.trace[i - 1].hypervolume - r.trace[i].hypervolume);
  }
  CHECK(worst_drop < 1e-3 * r.final_hypervolume());
  for (const auto& m : r.archive.members) {
    REQUIRE(m.kernel.has_value());
    CHECK(m.kernel->sigma > 0.0);
    CHECK(symmetry_error(*m.kernel) < 1e-12);
  }
}

TEST_CASE("SMS-EMOA selection") {
  Archive a;
  a.capacity = 2;
  a.members = {member(minimize({1, 2})), member(minimize({2, 1}))};
  smsemoa_select(a, member(minimize({3, 3}), 1), minimize({4, 4}));
  REQUIRE(a.members.size() == 2);
  for (const auto& m : a.members) CHECK(m.perceived != minimize({3, 3}));

  // Brute-force contributions of the three candidates decide the victim.
  Archive b;
  b.capacity = 2;
  b.members = {member(maximize({1, 0.2})), member(maximize({0.5, 0.8}))};
  smsemoa_select(b, member(maximize({0.9, 0.9}), 1), maximize({0, 0}));
  REQUIRE(b.members.size() == 2);
  // The newcomer dominates (0.5, 0.8), which is then the only worst-rank member.
  CHECK(std::find_if(b.members.begin(), b.members.end(),
                     [](const Individual& i) { return i.perceived == maximize({0.5, 0.8}); }) == b.members.end());
  CHECK(std::find_if(b.members.begin(), b.members.end(),
                     [](const Individual& i) { return i.perceived == maximize({0.9, 0.9}); }) != b.members.end());

  // Mutually non-dominated candidates: the least contributor goes.
  Archive c;
  c.capacity = 2;
  c.members = {member(maximize({1, 0.2})), member(maximize({0.5, 0.8}))};
  smsemoa_select(c, member(maximize({0.95, 0.5}), 1), maximize({0, 0}));
  const std::vector<ObjectiveVector> trio{maximize({1, 0.2}), maximize({0.5, 0.8}), maximize({0.95, 0.5})};
  const double all = hypervolume(trio, maximize({0, 0}));
  double least = INFINITY;
  std::size_t victim = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    auto rest = trio;
    rest.erase(rest.begin() + static_cast<long>(i));
    const double contrib = all - hypervolume(rest, maximize({0, 0}));
    if (contrib < least) {
      least = contrib;
      victim = i;
    }
  }
  for (const auto& m : c.members) CHECK(m.perceived != trio[victim]);
}

TEST_CASE("SMS-EMOA and NSGA-II keep the population size and the budget") {
  for (Algorithm a : {Algorithm::sms_emoa, Algorithm::nsga2}) {
    auto cfg = small(a, LandscapeSpec::grating_study_instance(5), 12);
    cfg.budget.evaluations = 12 + 12 * 7;
    const auto r = run_optimizer(cfg);
    CHECK(r.evaluations == 96);
    CHECK(r.archive.members.size() == 12);
    for (const auto& m : r.archive.members) {
      for (std::size_t d = 0; d < m.x.size(); ++d) {
        CHECK(m.x[d] >= cfg.landscape.bounds[d].lo);
        CHECK(m.x[d] <= cfg.landscape.bounds[d].hi);
      }
    }
    CHECK(r.final_hypervolume() >= r.initial_hypervolume() - 1e-12);
  }
  auto s = small(Algorithm::sms_emoa, LandscapeSpec::multi_sphere(3), 5);
  s.budget.generations = 23;
  const auto r = run_optimizer(s);
  CHECK(r.trace.size() == 1 + 4 + 1);  // initial, every mu iterations, final
}

TEST_CASE("variation operators respect bounds") {
  RandomStream rng(3);
  const std::vector<Interval> bounds(4, Interval{-1.0, 1.0});
  VariationParameters p;
  const std::vector<double> a{-0.99, 0.0, 0.5, 0.99}, b{0.99, 0.1, -0.5, -0.99};
  double moved = 0.0;
  for (int i = 0; i < 2000; ++i) {
    auto [c1, c2] = sbx_crossover(a, b, bounds, p, rng);
    polynomial_mutation(c1, bounds, p, rng);
    for (double v : c1) {
      CHECK(v >= -1.0);
      CHECK(v <= 1.0);
    }
    for (double v : c2) {
      CHECK(v >= -1.0);
      CHECK(v <= 1.0);
    }
    moved += std::abs(c1[1] - a[1]);
  }
  CHECK(moved > 0.0);
  // Identical parents: SBX reproduces them.
  auto [d1, d2] = sbx_crossover(a, a, bounds, p, rng);
  CHECK(d1 == a);
  CHECK(d2 == a);
  p.crossover_eta = -1;
  CHECK_THROWS(p.validate());
}
