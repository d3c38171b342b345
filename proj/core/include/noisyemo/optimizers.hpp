#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "noisyemo/cma_kernel.hpp"
#include "noisyemo/landscapes.hpp"
#include "noisyemo/random.hpp"
#include "noisyemo/types.hpp"
#include "noisyemo/variation.hpp"

namespace noisyemo {

enum class Algorithm { mo_cma, sms_emoa, nsga2 };

/// Parental re-evaluation policy of the MO-CMA: never (D), every generation
/// (E), every `reeval_interval` generations (O).
enum class Scheme { D, E, O };

/// When an MO-CMA offspring counts as a success for its parent kernel.
/// `population`: the offspring survives selection. `pairwise`: the offspring
/// dominates its parent.
enum class SuccessRule { population, pairwise };

enum class InitMode { uniform, seeded };

std::string to_string(Algorithm a);
std::string to_string(Scheme s);
std::string to_string(SuccessRule r);
std::string to_string(InitMode m);
Algorithm algorithm_from_string(const std::string& text);
Scheme scheme_from_string(const std::string& text);
SuccessRule success_rule_from_string(const std::string& text);
InitMode init_mode_from_string(const std::string& text);

struct Individual {
  DecisionVector x;
  ObjectiveVector perceived;
  std::optional<KernelState> kernel;
  long birth_gen = 0;
  int eval_count = 1;
};

struct Archive {
  std::vector<Individual> members;
  int capacity = 0;
  /// Completed stepper calls: generations for MO-CMA / NSGA-II, steady-state
  /// iterations for SMS-EMOA.
  long generation = 0;
  long evaluations = 0;

  std::vector<ObjectiveVector> perceived() const;
};

/// Stop criteria; a negative value disables the limit. Evaluations include
/// the initial population and all re-evaluations; a step is only started when
/// its full cost fits into the remaining evaluation budget.
struct Budget {
  long evaluations = -1;
  long generations = -1;
};

struct OptimizerConfig {
  Algorithm algorithm = Algorithm::mo_cma;
  Scheme scheme = Scheme::D;
  int reeval_interval = 10;
  int mu = 100;
  int lambda = 100;
  Budget budget;
  std::uint64_t seed = 0;
  InitMode init = InitMode::uniform;
  std::vector<DecisionVector> seed_points;
  LandscapeSpec landscape;
  ObjectiveVector reference_point;

  SuccessRule success_rule = SuccessRule::population;
  /// Kernel constants; defaults for n when absent.
  std::optional<KernelParameters> kernel;
  /// Initial step size; <= 0 selects 0.6 times half the init interval width.
  double sigma0 = 0.0;
  VariationParameters variation;
  /// Record the perceived hypervolume every `trace_stride` steps (0: one
  /// record per μ evaluations, i.e. every step for generational algorithms
  /// and every μ iterations for SMS-EMOA).
  int trace_stride = 0;

  /// Study defaults for an algorithm on a landscape: μ = λ = 100 (λ = 1 for
  /// SMS-EMOA) and the family's reference point.
  static OptimizerConfig defaults(Algorithm algorithm, LandscapeSpec landscape);

  KernelParameters kernel_parameters() const;
  double initial_sigma() const;
  int effective_trace_stride() const;

  /// Throws ConfigError when an invariant is violated.
  void validate() const;
};

/// Evaluations consumed by the step that produces generation `next_generation`.
long step_cost(const OptimizerConfig& cfg, long next_generation);

/// Initial population (μ evaluations).
Archive initialize(const OptimizerConfig& cfg, const RandomStream& rng);

/// One MO-CMA generation.
void mocma_step(Archive& archive, const OptimizerConfig& cfg, const RandomStream& rng);
/// One steady-state SMS-EMOA iteration.
void smsemoa_step(Archive& archive, const OptimizerConfig& cfg, const RandomStream& rng);
/// Adds `offspring` to the archive and removes the member of the worst rank
/// with the least hypervolume contribution.
void smsemoa_select(Archive& archive, Individual offspring, const ObjectiveVector& ref);
/// One NSGA-II generation.
void nsga2_step(Archive& archive, const OptimizerConfig& cfg, const RandomStream& rng);

void step(Archive& archive, const OptimizerConfig& cfg, const RandomStream& rng);

struct TracePoint {
  long generation = 0;
  long evaluations = 0;
  double hypervolume = 0.0;
};

struct RunRecord {
  OptimizerConfig config;
  std::vector<TracePoint> trace;  // first entry is the initial population
  long evaluations = 0;
  long generations = 0;
  Archive archive;
  double wall_clock_seconds = 0.0;

  double initial_hypervolume() const { return trace.empty() ? 0.0 : trace.front().hypervolume; }
  double final_hypervolume() const { return trace.empty() ? 0.0 : trace.back().hypervolume; }
};

/// Validates, initializes and steps until the budget is exhausted.
/// Deterministic in cfg.seed (wall clock aside).
RunRecord run_optimizer(const OptimizerConfig& cfg);

}  // namespace noisyemo
