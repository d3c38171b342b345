#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace noisyemo {

/// Bad command line input or selection; the CLI maps it to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PosthocMode { reeval, sample, reconstruct, ellipse };
PosthocMode posthoc_mode_from_string(const std::string& text);

struct PosthocOptions {
  std::filesystem::path dir;  // campaign output directory
  PosthocMode mode = PosthocMode::reeval;
  int samples = 100;
  /// Noise variance for sampling; the run's own eps2 when absent.
  std::optional<double> eps2;
  /// Restrict to one run id.
  std::optional<std::string> run;
  bool genotypes = false;
};

/// reeval: ideal rows appended to fronts.csv. sample: clouds.csv with
/// `samples` draws per archive member. reconstruct: non-dominated pooled draws
/// appended to fronts.csv as kind=sampled. ellipse: ellipses.csv with
/// empirical and analytic disturbance ellipses. Rows of the same kind for the
/// same runs are replaced, so repeated invocations give identical files.
void posthoc_command(const PosthocOptions& options, std::ostream& log);

struct StatsOptions {
  std::filesystem::path dir;
  /// Metric of the printed comparison matrix.
  std::string metric = "perceived_hv";
  double alpha = 0.05;
};

/// Writes stats.csv (box statistics per cell and metric) and tests.csv
/// (pairwise Mann-Whitney per block), and prints the +/-/~ matrix.
void stats_command(const StatsOptions& options, std::ostream& out, std::ostream& log);

struct PlotOptions {
  std::filesystem::path input;  // fronts.csv or a campaign directory
  /// key=value filters: kind, run, cell, generation, member.
  std::vector<std::string> selection;
  std::filesystem::path out;  // stdout when empty
};

/// Filtered rows of fronts.csv (or ellipses.csv for kind=ellipse), same header.
void plotdata_command(const PlotOptions& options, std::ostream& out);

struct HvOptions {
  std::filesystem::path input;
  std::vector<double> reference;
  std::string sense = "max";
  std::optional<std::string> kind;
  std::optional<std::string> run;
};

/// Hypervolume of the f1..fm columns of a CSV file.
double hv_command(const HvOptions& options);

}  // namespace noisyemo
