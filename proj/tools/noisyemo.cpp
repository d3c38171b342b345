#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "noisyemo/acceptance.hpp"
#include "noisyemo/campaign.hpp"
#include "noisyemo/config.hpp"
#include "noisyemo/reports.hpp"
#include "noisyemo/types.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAcceptance = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string config;
  std::string out;
  int workers = 0;
  std::optional<std::uint64_t> seed;
  bool genotypes = false;
  std::string profile;
};

int do_run(const Common& c) {
  if (c.config.empty() == c.profile.empty()) {
    throw noisyemo::UsageError("run: give exactly one of --config or --profile");
  }
  noisyemo::CampaignConfig campaign;
  if (!c.config.empty()) {
    try {
      campaign = noisyemo::load_campaign(c.config);
    } catch (const noisyemo::ConfigError& e) {
      std::cerr << c.config << ":" << e.line() << ": " << e.what() << "\n";
      return kExitUsage;
    }
  } else {
    campaign = noisyemo::parse_campaign(noisyemo::builtin_campaign(c.profile));
  }
  noisyemo::CampaignOptions opts;
  opts.out = c.out;
  opts.workers = c.workers;
  opts.genotypes = c.genotypes;
  opts.seed = c.seed;
  opts.log = &std::cerr;
  const auto result = noisyemo::run_campaign(campaign, opts);
  std::cout << result.out.string() << ": " << result.total << " runs (" << result.executed << " executed, "
            << result.resumed << " resumed)\n";
  return kExitOk;
}

int do_selftest(const Common& c) {
  const auto profile = noisyemo::profile_from_string(c.profile.empty() ? "quick" : c.profile);
  noisyemo::AcceptanceOptions opts;
  opts.workers = c.workers;
  if (c.seed) opts.seed = *c.seed;
  opts.log = &std::cerr;
  bool ok = true;
  for (int id : noisyemo::criteria_for(profile)) {
    std::cerr << "criterion " << id << " ..." << std::endl;
    const auto r = noisyemo::run_criterion(id, opts);
    std::cout << noisyemo::format_result(r) << std::endl;
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitAcceptance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noisy multi-objective optimisation benchmark harness"};
  app.require_subcommand(1);
  Common c;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--workers", c.workers, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", c.seed, "Override the base seed");
  };

  auto* run = app.add_subcommand("run", "Execute (or resume) a campaign");
  run->add_option("--config", c.config, "Campaign JSON file");
  run->add_option("--profile", c.profile, "Built-in campaign")
      ->check(CLI::IsMember({"quick", "paper-n10", "paper-n30", "full"}));
  run->add_option("--out", c.out, "Output directory (overrides the config)");
  run->add_flag("--genotypes", c.genotypes, "Write x1..xn columns to fronts.csv");
  add_common(run);

  noisyemo::PosthocOptions posthoc;
  std::string posthoc_mode = "reeval";
  std::optional<std::string> posthoc_run;
  auto* ph = app.add_subcommand("posthoc", "Noise-free re-evaluation, sampling, reconstruction, ellipses");
  ph->add_option("dir", posthoc.dir, "Campaign output directory")->required();
  ph->add_option("--mode", posthoc_mode, "reeval | sample | reconstruct | ellipse")
      ->check(CLI::IsMember({"reeval", "sample", "reconstruct", "ellipse"}));
  ph->add_option("--samples", posthoc.samples, "Draws per archive member")->check(CLI::PositiveNumber);
  ph->add_option("--eps2", posthoc.eps2, "Noise variance (default: the run's own)");
  ph->add_option("--run", posthoc_run, "Restrict to one run id");
  ph->add_flag("--genotypes", posthoc.genotypes, "Write x1..xn columns");

  noisyemo::StatsOptions stats;
  auto* st = app.add_subcommand("stats", "Box statistics and pairwise Mann-Whitney tests");
  st->add_option("dir", stats.dir, "Campaign output directory")->required();
  st->add_option("--metric", stats.metric, "Metric of the printed matrix");
  st->add_option("--alpha", stats.alpha, "Significance level");

  noisyemo::PlotOptions plot;
  std::string plot_out;
  auto* pd = app.add_subcommand("plotdata", "Filter fronts.csv into plot-ready CSV");
  pd->add_option("input", plot.input, "fronts.csv or campaign directory")->required();
  pd->add_option("selection", plot.selection, "key=value filters (kind, run, cell, generation, member)");
  pd->add_option("--out", plot_out, "Output file (default stdout)");

  noisyemo::HvOptions hv;
  std::optional<std::string> hv_kind, hv_run;
  auto* hvc = app.add_subcommand("hv", "Hypervolume of a CSV front");
  hvc->add_option("input", hv.input, "CSV with f1..fm columns")->required();
  hvc->add_option("--ref", hv.reference, "Reference point")->required()->delimiter(',');
  hvc->add_option("--sense", hv.sense, "min | max")->check(CLI::IsMember({"min", "max"}));
  hvc->add_option("--kind", hv_kind, "Only rows of this kind");
  hvc->add_option("--run", hv_run, "Only rows of this run id");

  auto* self = app.add_subcommand("selftest", "Run the acceptance oracle suite");
  self->add_option("--profile", c.profile, "quick | paper-n10 | paper-n30 | full")
      ->check(CLI::IsMember({"quick", "paper-n10", "paper-n30", "full"}));
  add_common(self);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return do_run(c);
    if (*self) return do_selftest(c);
    if (*ph) {
      posthoc.mode = noisyemo::posthoc_mode_from_string(posthoc_mode);
      posthoc.run = posthoc_run;
      noisyemo::posthoc_command(posthoc, std::cerr);
      return kExitOk;
    }
    if (*st) {
      noisyemo::stats_command(stats, std::cout, std::cerr);
      return kExitOk;
    }
    if (*pd) {
      plot.out = plot_out;
      noisyemo::plotdata_command(plot, std::cout);
      return kExitOk;
    }
    if (*hvc) {
      hv.kind = hv_kind;
      hv.run = hv_run;
      std::cout.precision(17);
      std::cout << noisyemo::hv_command(hv) << "\n";
      return kExitOk;
    }
  } catch (const noisyemo::ConfigError& e) {
    std::cerr << "config:" << e.line() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const noisyemo::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
