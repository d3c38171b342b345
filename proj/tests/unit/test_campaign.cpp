#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "noisyemo/campaign.hpp"
#include "noisyemo/config.hpp"
#include "noisyemo/csv.hpp"
#include "noisyemo/indicators.hpp"
#include "noisyemo/landscapes.hpp"
#include "noisyemo/reports.hpp"

using namespace noisyemo;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path fresh(const std::string& name) {
  const fs::path p = fs::path(NOISYEMO_TEST_TMP) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

const char* kSmall = R"({
  "name": "small",
  "base_seed": 3,
  "runs": 2,
  "defaults": {"mu": 6, "budget": {"evaluations": 200}},
  "matrix": {
    "problems": [{"problem": {"family": "grating", "n": 4, "positions": [0, 0.5]}},
                 {"problem": {"family": "sphere", "n": 3}}],
    "noise": [0, 0.01],
    "optimizers": [{"algorithm": "mo-cma", "scheme": "D"}, {"algorithm": "nsga2"}]
  }
})";

}  // namespace

TEST_CASE("parallel_for visits every index and rethrows") {
  std::vector<int> hit(50, 0);
  parallel_for(hit.size(), 4, [&](std::size_t i) { hit[i] += 1; });
  for (int h : hit) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

TEST_CASE("zero-budget campaign records the initial population") {
  const auto dir = fresh("zero");
  const auto c = parse_campaign(R"({"runs": 1, "cells": [{"problem": {"family": "sphere", "n": 3}, "mu": 5,
    "algorithm": "mo-cma", "budget": {"evaluations": 0}}]})");
  CampaignOptions o;
  o.out = dir;
  run_campaign(c, o);
  const auto runs = read_csv(dir / "runs.csv");
  REQUIRE(runs.rows.size() == 1);
  CHECK(runs.rows[0][runs.column("generations")] == "0");
  CHECK(runs.rows[0][runs.column("evaluations")] == "5");
  CHECK(runs.rows[0][runs.column("initial_hv")] == runs.rows[0][runs.column("perceived_hv")]);
}

TEST_CASE("campaigns are reproducible, resumable and feed the post-processing") {
  const auto c = parse_campaign(kSmall);
  const auto a = fresh("a"), b = fresh("b");
  CampaignOptions o;
  o.workers = 3;
  o.genotypes = true;
  o.out = a;
  const auto ra = run_campaign(c, o);
  CHECK(ra.total == 16);
  CHECK(ra.executed == 16);
  o.workers = 1;
  o.out = b;
  run_campaign(c, o);
  for (const char* f : {"runs.csv", "fronts.csv", "traces.csv", "summary.json", "campaign.json"}) {
    CHECK_MESSAGE(slurp(a / f) == slurp(b / f), f);
  }

  // Resume: drop one run and its entry is recomputed identically.
  const auto runs_before = slurp(a / "runs.csv");
  fs::remove(a / "runs" / "c002-r001.json");
  o.out = a;
  const auto again = run_campaign(c, o);
  CHECK(again.executed == 1);
  CHECK(again.resumed == 15);
  CHECK(slurp(a / "runs.csv") == runs_before);

  const auto fronts = read_csv(a / "fronts.csv");
  CHECK(fronts.find("x4").has_value());
  std::size_t perceived = 0;
  for (const auto& row : fronts.rows) perceived += row[fronts.column("kind")] == "perceived";
  CHECK(perceived == 16 * 6);

  // reeval on noise-free runs reproduces the perceived rows.
  std::ostringstream log;
  PosthocOptions p;
  p.dir = a;
  p.genotypes = true;
  posthoc_command(p, log);
  const auto after = read_csv(a / "fronts.csv");
  auto rows_of = [&](const std::string& run, const std::string& kind) {
    std::vector<std::vector<std::string>> out;
    for (auto row : after.rows) {
      if (row[0] == run && row[after.column("kind")] == kind) {
        row.erase(row.begin() + static_cast<long>(after.column("kind")));
        out.push_back(row);
      }
    }
    return out;
  };
  CHECK(rows_of("c000-r000", "ideal") == rows_of("c000-r000", "perceived"));
  CHECK(rows_of("c002-r000", "ideal") != rows_of("c002-r000", "perceived"));
  posthoc_command(p, log);
  CHECK(read_csv(a / "fronts.csv").rows.size() == after.rows.size());

  p.mode = PosthocMode::sample;
  p.samples = 100;
  p.run = "c002-r000";
  posthoc_command(p, log);
  CHECK(read_csv(a / "clouds.csv").rows.size() == 100 * 6);

  p.mode = PosthocMode::reconstruct;
  posthoc_command(p, log);
  std::size_t sampled = 0;
  const auto rec = read_csv(a / "fronts.csv");
  for (const auto& row : rec.rows) sampled += row[rec.column("kind")] == "sampled";
  CHECK(sampled >= 1);
  CHECK(sampled <= 600);

  p.mode = PosthocMode::ellipse;
  posthoc_command(p, log);
  CHECK(read_csv(a / "ellipses.csv").rows.size() == 2 * 6);

  // The whole pipeline is deterministic.
  PosthocOptions q = p;
  q.dir = b;
  for (auto mode : {PosthocMode::reeval, PosthocMode::sample, PosthocMode::reconstruct, PosthocMode::ellipse}) {
    q.mode = mode;
    q.run = mode == PosthocMode::reeval ? std::nullopt : std::optional<std::string>("c002-r000");
    posthoc_command(q, log);
  }
  CHECK(slurp(a / "fronts.csv") == slurp(b / "fronts.csv"));
  CHECK(slurp(a / "clouds.csv") == slurp(b / "clouds.csv"));

  std::ostringstream table, slog;
  stats_command(StatsOptions{a}, table, slog);
  CHECK(fs::exists(a / "stats.csv"));
  CHECK(fs::exists(a / "tests.csv"));
  CHECK(table.str().find("mo-cma-D/nsga2") != std::string::npos);
  std::ostringstream table_b;
  stats_command(StatsOptions{b}, table_b, slog);
  CHECK(table.str() == table_b.str());
  CHECK(slurp(a / "tests.csv") == slurp(b / "tests.csv"));

  std::ostringstream plot;
  plotdata_command(PlotOptions{a, {"kind=perceived", "run=c001-r001"}, {}}, plot);
  std::istringstream pin(plot.str());
  CHECK(parse_csv(pin).rows.size() == 6);
  std::ostringstream none;
  plotdata_command(PlotOptions{a, {"run=nope"}, {}}, none);
  std::istringstream nin(none.str());
  const auto empty = parse_csv(nin);
  CHECK(empty.rows.empty());
  CHECK_FALSE(empty.header.empty());
  CHECK_THROWS_AS(plotdata_command(PlotOptions{a, {"colour=red"}, {}}, none), UsageError);

  std::ostringstream analytic;
  plotdata_command(PlotOptions{a, {"kind=analytic", "cell=0"}, {}}, analytic);
  std::istringstream ain(analytic.str());
  const auto poly = parse_csv(ain);
  REQUIRE(poly.rows.size() >= 2);
  const auto f1 = poly.column("f1"), f2 = poly.column("f2");
  CHECK(parse_double(poly.rows.front()[f1]) == doctest::Approx(0.0).scale(1.0));
  CHECK(parse_double(poly.rows.front()[f2]) == doctest::Approx(0.94965).epsilon(1e-5));
  CHECK(parse_double(poly.rows.back()[f1]) == doctest::Approx(1.0));
  CHECK(parse_double(poly.rows.back()[f2]) == doctest::Approx(0.0).scale(1.0));

  HvOptions h;
  h.input = a / "fronts.csv";
  h.reference = {0.0, 0.0};
  h.kind = "analytic";
  h.run = "analytic-c000";
  const auto expected = hypervolume(analytic_front(LandscapeSpec::grating_study_instance(4), 6), maximize({0, 0}));
  CHECK(hv_command(h) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected < 0.47482);
}

TEST_CASE("posthoc needs genotypes") {
  const auto dir = fresh("nogeno");
  const auto c = parse_campaign(R"({"runs": 1, "cells": [{"problem": {"family": "sphere", "n": 3}, "mu": 4,
    "algorithm": "nsga2", "budget": {"evaluations": 20}}]})");
  CampaignOptions o;
  o.out = dir;
  run_campaign(c, o);
  for (const auto& e : fs::directory_iterator(dir / "runs")) {
    auto text = slurp(e.path());
    auto j = nlohmann::json::parse(text);
    for (auto& m : j["members"]) m.erase("x");
    std::ofstream(e.path()) << j.dump();
  }
  std::ostringstream log;
  CHECK_THROWS_WITH_AS(posthoc_command(PosthocOptions{dir}, log), doctest::Contains("genotype"), std::runtime_error);
}
