#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "noisyemo/config.hpp"
#include "noisyemo/optimizers.hpp"

namespace noisyemo {

/// Runs fn(0..count-1) on up to `workers` threads (0: hardware concurrency).
/// The first exception thrown by any task is rethrown after all threads stop.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

/// Final-archive indicators of one run.
struct RunMetrics {
  double initial_hv = 0.0;
  double perceived_hv = 0.0;
  double ideal_hv = 0.0;
  /// NaN when no analytic front is known for the landscape.
  double reference_hv = std::numeric_limits<double>::quiet_NaN();
  double delta_v_perceived = std::numeric_limits<double>::quiet_NaN();
  double delta_v_ideal = std::numeric_limits<double>::quiet_NaN();
  double delta_d_perceived = std::numeric_limits<double>::quiet_NaN();
  double delta_d_ideal = std::numeric_limits<double>::quiet_NaN();
  std::size_t delta_d_excluded = 0;
  int ideal_clusters = 0;
};

/// ΔV against the analytic front hypervolume and ΔD against μ points evenly
/// spaced along the analytic front, for perceived and noise-free objectives.
RunMetrics compute_metrics(const OptimizerConfig& cfg, const std::vector<DecisionVector>& genotypes,
                           const std::vector<ObjectiveVector>& perceived, double initial_hv,
                           double cluster_tol = 0.05);

struct StoredMember {
  DecisionVector x;
  ObjectiveVector perceived;
  long birth_gen = 0;
  int eval_count = 1;
  /// Kernel summary (MO-CMA only; NaN otherwise).
  double sigma = std::numeric_limits<double>::quiet_NaN();
  double success_rate = std::numeric_limits<double>::quiet_NaN();
};

/// Everything persisted about one finished run.
struct StoredRun {
  std::string id;
  std::size_t cell = 0;
  std::size_t run = 0;
  std::string label;
  double eps2 = 0.0;
  OptimizerConfig config;
  std::vector<TracePoint> trace;
  long evaluations = 0;
  long generations = 0;
  std::vector<StoredMember> members;
  RunMetrics metrics;
  double wall_clock_seconds = 0.0;

  std::vector<DecisionVector> genotypes() const;
  std::vector<ObjectiveVector> perceived() const;
};

std::string run_id(std::size_t cell, std::size_t run);

StoredRun store_run(const RunRecord& record, const CampaignCell& cell, std::size_t run);
nlohmann::json to_json(const StoredRun& run);
StoredRun stored_run_from_json(const nlohmann::json& j);

/// Reads `<dir>/runs/*.json`, sorted by run id.
/// Throws std::runtime_error when the directory holds no run files.
std::vector<StoredRun> load_runs(const std::filesystem::path& dir);

struct CampaignOptions {
  std::filesystem::path out;  // overrides CampaignConfig::output when set
  int workers = 1;
  bool genotypes = false;
  std::optional<std::uint64_t> seed;  // overrides the base seed
  std::ostream* log = nullptr;
};

struct CampaignResult {
  std::filesystem::path out;
  std::size_t total = 0;
  std::size_t executed = 0;
  std::size_t resumed = 0;
};

/// Executes every (cell, run) pair not yet recorded in `<out>/runs/`, then
/// writes runs.csv, fronts.csv, traces.csv, summary.json, campaign.json and
/// manifest.json (and timing.csv, the only file holding wall-clock data).
CampaignResult run_campaign(const CampaignConfig& config, const CampaignOptions& options);

/// Rewrites the merged outputs from the run files in `dir`.
void write_campaign_outputs(const std::filesystem::path& dir, const std::vector<StoredRun>& runs,
                            const std::string& name, bool genotypes);

/// fronts.csv header for the given objective and genotype widths.
std::vector<std::string> fronts_header(std::size_t m, std::size_t n);

}  // namespace noisyemo
