#include "noisyemo/optimizers.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "noisyemo/indicators.hpp"
#include "noisyemo/pareto.hpp"

namespace noisyemo {

namespace {

// Substream slots inside one generation; offspring i uses slot i.
constexpr std::uint64_t kReevalSlot = std::uint64_t{1} << 32;
constexpr std::uint64_t kMatingSlot = std::uint64_t{1} << 33;

template <typename E>
E parse_enum(const std::string& text, std::initializer_list<std::pair<const char*, E>> table, const char* what) {
  for (const auto& [name, value] : table) {
    if (text == name) return value;
  }
  throw std::invalid_argument(std::string("unknown ") + what + " '" + text + "'");
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::mo_cma: return "mo-cma";
    case Algorithm::sms_emoa: return "sms-emoa";
    case Algorithm::nsga2: return "nsga2";
  }
  return "?";
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::D: return "D";
    case Scheme::E: return "E";
    case Scheme::O: return "O";
  }
  return "?";
}

std::string to_string(SuccessRule r) { return r == SuccessRule::population ? "population" : "pairwise"; }
std::string to_string(InitMode m) { return m == InitMode::uniform ? "uniform" : "seeded"; }

Algorithm algorithm_from_string(const std::string& text) {
  return parse_enum<Algorithm>(text, {{"mo-cma", Algorithm::mo_cma}, {"sms-emoa", Algorithm::sms_emoa},
                                      {"nsga2", Algorithm::nsga2}, {"nsga-ii", Algorithm::nsga2}},
                               "algorithm");
}

Scheme scheme_from_string(const std::string& text) {
  return parse_enum<Scheme>(text, {{"D", Scheme::D}, {"E", Scheme::E}, {"O", Scheme::O}}, "scheme");
}

SuccessRule success_rule_from_string(const std::string& text) {
  return parse_enum<SuccessRule>(text, {{"population", SuccessRule::population}, {"pairwise", SuccessRule::pairwise}},
                                 "success rule");
}

InitMode init_mode_from_string(const std::string& text) {
  return parse_enum<InitMode>(text, {{"uniform", InitMode::uniform}, {"seeded", InitMode::seeded}}, "init mode");
}

std::vector<ObjectiveVector> Archive::perceived() const {
  std::vector<ObjectiveVector> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.perceived);
  return out;
}

OptimizerConfig OptimizerConfig::defaults(Algorithm algorithm, LandscapeSpec landscape) {
  OptimizerConfig cfg;
  cfg.algorithm = algorithm;
  cfg.lambda = algorithm == Algorithm::sms_emoa ? 1 : 100;
  cfg.reference_point = default_reference_point(landscape);
  cfg.landscape = std::move(landscape);
  return cfg;
}

KernelParameters OptimizerConfig::kernel_parameters() const {
  return kernel ? *kernel : KernelParameters::defaults(landscape.n);
}

double OptimizerConfig::initial_sigma() const {
  if (sigma0 > 0.0) return sigma0;
  return 0.6 * 0.5 * landscape.bounds.front().width();
}

int OptimizerConfig::effective_trace_stride() const {
  if (trace_stride > 0) return trace_stride;
  return algorithm == Algorithm::sms_emoa ? std::max(mu, 1) : 1;
}

void OptimizerConfig::validate() const {
  try {
    landscape.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("landscape: ") + e.what());
  }
  if (mu < 2) throw ConfigError("mu must be >= 2");
  if (algorithm == Algorithm::sms_emoa) {
    if (lambda != 1) throw ConfigError("sms-emoa is steady state: lambda must be 1");
  } else if (lambda != mu) {
    throw ConfigError(to_string(algorithm) + " requires lambda == mu");
  }
  if (algorithm == Algorithm::mo_cma && scheme == Scheme::O && reeval_interval < 2) {
    throw ConfigError("scheme O requires reeval_interval >= 2");
  }
  if (budget.evaluations < 0 && budget.generations < 0) throw ConfigError("budget: no stop criterion given");
  if (reference_point.size() != static_cast<std::size_t>(landscape.m) || reference_point.senses != landscape.senses) {
    throw ConfigError("reference point does not match the landscape objectives");
  }
  if (init == InitMode::seeded) {
    if (seed_points.empty()) throw ConfigError("init 'seeded' needs seed points");
    for (const auto& p : seed_points) {
      if (p.size() != static_cast<std::size_t>(landscape.n)) throw ConfigError("seed point dimension differs from n");
    }
  }
  if (sigma0 < 0.0) throw ConfigError("sigma0 must be > 0");
  if (trace_stride < 0) throw ConfigError("trace_stride must be >= 0");
  try {
    kernel_parameters().validate();
    variation.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

long step_cost(const OptimizerConfig& cfg, long next_generation) {
  switch (cfg.algorithm) {
    case Algorithm::mo_cma: {
      long cost = cfg.mu;
      if (cfg.scheme == Scheme::E || (cfg.scheme == Scheme::O && next_generation % cfg.reeval_interval == 0)) {
        cost += cfg.mu;
      }
      return cost;
    }
    case Algorithm::sms_emoa: return 1;
    case Algorithm::nsga2: return cfg.lambda;
  }
  return 0;
}

Archive initialize(const OptimizerConfig& cfg, const RandomStream& rng) {
  Archive archive;
  archive.capacity = cfg.mu;
  const auto params = cfg.kernel_parameters();
  const double sigma = cfg.initial_sigma();
  for (int i = 0; i < cfg.mu; ++i) {
    RandomStream s = rng.split(0, static_cast<std::uint64_t>(i));
    Individual ind;
    if (cfg.init == InitMode::seeded && static_cast<std::size_t>(i) < cfg.seed_points.size()) {
      ind.x = cfg.seed_points[static_cast<std::size_t>(i)];
    } else {
      ind.x.resize(static_cast<std::size_t>(cfg.landscape.n));
      for (std::size_t j = 0; j < ind.x.size(); ++j) {
        ind.x[j] = s.uniform(cfg.landscape.bounds[j].lo, cfg.landscape.bounds[j].hi);
      }
    }
    ind.perceived = noisy_evaluate(cfg.landscape, ind.x, s);
    if (cfg.algorithm == Algorithm::mo_cma) ind.kernel = kernel_init(ind.x, sigma, params);
    archive.members.push_back(std::move(ind));
  }
  archive.evaluations = cfg.mu;
  return archive;
}

namespace {

std::vector<long> births(const std::vector<Individual>& pool) {
  std::vector<long> out;
  out.reserve(pool.size());
  for (const auto& ind : pool) out.push_back(ind.birth_gen);
  return out;
}

std::vector<ObjectiveVector> objectives(const std::vector<Individual>& pool) {
  std::vector<ObjectiveVector> out;
  out.reserve(pool.size());
  for (const auto& ind : pool) out.push_back(ind.perceived);
  return out;
}

}  // namespace

void mocma_step(Archive& archive, const OptimizerConfig& cfg, const RandomStream& rng) {
  const long gen = archive.generation + 1;
  const auto gen_id = static_cast<std::uint64_t>(gen);
  const auto params = cfg.kernel_parameters();
  const std::size_t mu = archive.members.size();

  const bool reeval = cfg.scheme == Scheme::E || (cfg.scheme == Scheme::O && gen % cfg.reeval_interval == 0);
  if (reeval) {
    for (std::size_t i = 0; i < mu; ++i) {
      RandomStream s = rng.split(gen_id, kReevalSlot + i);
      auto& parent = archive.members[i];
      parent.perceived = noisy_evaluate(cfg.landscape, parent.x, s);
      ++parent.eval_count;
    }
    archive.evaluations += static_cast<long>(mu);
  }

  std::vector<Individual> pool = archive.members;
  pool.reserve(2 * mu);
  for (std::size_t i = 0; i < mu; ++i) {
    RandomStream s = rng.split(gen_id, i);
    const auto& parent = archive.members[i];
    Individual child;
    child.x = kernel_sample(*parent.kernel, s);
    child.perceived = noisy_evaluate(cfg.landscape, child.x, s);
    child.birth_gen = gen;
    child.kernel = parent.kernel;
    child.kernel->x = child.x;
    pool.push_back(std::move(child));
  }
  archive.evaluations += static_cast<long>(mu);

  const auto pts = objectives(pool);
  const auto bs = births(pool);
  const auto survivors = select_by_rank_and_contribution(pts, bs, cfg.reference_point, mu);
  std::vector<bool> selected(pool.size(), false);
  for (std::size_t s : survivors) selected[s] = true;

  for (std::size_t i = 0; i < mu; ++i) {
    auto& parent = pool[i];
    auto& child = pool[mu + i];
    const bool success = cfg.success_rule == SuccessRule::population ? selected[mu + i]
                                                                     : dominates(child.perceived, parent.perceived);
    std::vector<double> step_vec(parent.x.size());
    for (std::size_t j = 0; j < step_vec.size(); ++j) {
      step_vec[j] = (child.x[j] - parent.x[j]) / parent.kernel->sigma;
    }
    if (selected[i]) update_step_size(*parent.kernel, success, params);
    if (selected[mu + i]) {
      update_step_size(*child.kernel, success, params);
      update_covariance(*child.kernel, step_vec, params);
    }
  }

  std::vector<Individual> next;
  next.reserve(mu);
  for (std::size_t s : survivors) next.push_back(std::move(pool[s]));
  archive.members = std::move(next);
  archive.generation = gen;
}

void smsemoa_select(Archive& archive, Individual offspring, const ObjectiveVector& ref) {
  archive.members.push_back(std::move(offspring));
  const auto pts = objectives(archive.members);
  const auto bs = births(archive.members);
  const auto ranks = nondominated_sort(pts);
  const int worst = *std::max_element(ranks.begin(), ranks.end());
  std::vector<std::size_t> last;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] == worst) last.push_back(i);
  }
  std::size_t victim = last.front();
  if (last.size() > 1) {
    std::vector<ObjectiveVector> front;
    std::vector<long> fb;
    for (std::size_t i : last) {
      front.push_back(pts[i]);
      fb.push_back(bs[i]);
    }
    victim = last[remove_least_contributors(front, fb, ref, 1).front()];
  }
  archive.members.erase(archive.members.begin() + static_cast<long>(victim));
}

void smsemoa_step(Archive& archive, const OptimizerConfig& cfg, const RandomStream& rng) {
  const long gen = archive.generation + 1;
  const auto gen_id = static_cast<std::uint64_t>(gen);
  RandomStream mating = rng.split(gen_id, kMatingSlot);
  const auto& members = archive.members;
  const auto& p1 = members[mating.below(members.size())];
  const auto& p2 = members[mating.below(members.size())];
  auto children = sbx_crossover(p1.x, p2.x, cfg.landscape.bounds, cfg.variation, mating);
  Individual child;
  child.x = std::move(children.first);
  polynomial_mutation(child.x, cfg.landscape.bounds, cfg.variation, mating);
  RandomStream noise = rng.split(gen_id, 0);
  child.perceived = noisy_evaluate(cfg.landscape, child.x, noise);
  child.birth_gen = gen;
  archive.evaluations += 1;
  smsemoa_select(archive, std::move(child), cfg.reference_point);
  archive.generation = gen;
}

namespace {

// Rank and crowding distance of every member of `pool`.
void rank_and_crowd(const std::vector<ObjectiveVector>& pts, std::vector<int>& ranks, std::vector<double>& crowd) {
  ranks = nondominated_sort(pts);
  crowd.assign(pts.size(), 0.0);
  for (const auto& front : fronts_from_ranks(ranks)) {
    std::vector<ObjectiveVector> f;
    f.reserve(front.size());
    for (std::size_t i : front) f.push_back(pts[i]);
    const auto d = crowding_distance(f);
    for (std::size_t j = 0; j < front.size(); ++j) crowd[front[j]] = d[j];
  }
}

}  // namespace

void nsga2_step(Archive& archive, const OptimizerConfig& cfg, const RandomStream& rng) {
  const long gen = archive.generation + 1;
  const auto gen_id = static_cast<std::uint64_t>(gen);
  const std::size_t mu = archive.members.size();
  RandomStream mating = rng.split(gen_id, kMatingSlot);

  std::vector<int> ranks;
  std::vector<double> crowd;
  rank_and_crowd(archive.perceived(), ranks, crowd);

  auto tournament = [&]() -> const Individual& {
    const std::size_t a = mating.below(mu);
    const std::size_t b = mating.below(mu);
    if (ranks[a] != ranks[b]) return archive.members[ranks[a] < ranks[b] ? a : b];
    if (crowd[a] != crowd[b]) return archive.members[crowd[a] > crowd[b] ? a : b];
    return archive.members[mating.uniform() < 0.5 ? a : b];
  };

  std::vector<Individual> pool = archive.members;
  const auto lambda = static_cast<std::size_t>(cfg.lambda);
  std::size_t made = 0;
  while (made < lambda) {
    const Individual& p1 = tournament();
    const Individual& p2 = tournament();
    auto [c1, c2] = sbx_crossover(p1.x, p2.x, cfg.landscape.bounds, cfg.variation, mating);
    for (auto* c : {&c1, &c2}) {
      if (made == lambda) break;
      polynomial_mutation(*c, cfg.landscape.bounds, cfg.variation, mating);
      Individual child;
      child.x = std::move(*c);
      child.birth_gen = gen;
      pool.push_back(std::move(child));
      ++made;
    }
  }
  for (std::size_t i = 0; i < lambda; ++i) {
    RandomStream s = rng.split(gen_id, i);
    auto& child = pool[mu + i];
    child.perceived = noisy_evaluate(cfg.landscape, child.x, s);
  }
  archive.evaluations += static_cast<long>(lambda);

  rank_and_crowd(objectives(pool), ranks, crowd);
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (ranks[a] != ranks[b]) return ranks[a] < ranks[b];
    if (crowd[a] != crowd[b]) return crowd[a] > crowd[b];
    return pool[a].birth_gen < pool[b].birth_gen;
  });
  order.resize(mu);
  std::sort(order.begin(), order.end());
  std::vector<Individual> next;
  next.reserve(mu);
  for (std::size_t i : order) next.push_back(std::move(pool[i]));
  archive.members = std::move(next);
  archive.generation = gen;
}

void step(Archive& archive, const OptimizerConfig& cfg, const RandomStream& rng) {
  switch (cfg.algorithm) {
    case Algorithm::mo_cma: mocma_step(archive, cfg, rng); break;
    case Algorithm::sms_emoa: smsemoa_step(archive, cfg, rng); break;
    case Algorithm::nsga2: nsga2_step(archive, cfg, rng); break;
  }
}

RunRecord run_optimizer(const OptimizerConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const RandomStream rng(cfg.seed, 0);
  RunRecord record;
  record.config = cfg;
  record.archive = initialize(cfg, rng);

  auto trace = [&]() {
    const auto pts = record.archive.perceived();
    record.trace.push_back({record.archive.generation, record.archive.evaluations,
                            hypervolume(pts, cfg.reference_point)});
  };
  trace();

  const long stride = cfg.effective_trace_stride();
  auto& archive = record.archive;
  while (true) {
    const long next = archive.generation + 1;
    if (cfg.budget.generations >= 0 && next > cfg.budget.generations) break;
    if (cfg.budget.evaluations >= 0 && archive.evaluations + step_cost(cfg, next) > cfg.budget.evaluations) break;
    step(archive, cfg, rng);
    if (archive.generation % stride == 0) trace();
  }
  if (record.trace.back().generation != archive.generation) trace();

  record.evaluations = archive.evaluations;
  record.generations = archive.generation;
  record.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

}  // namespace noisyemo
