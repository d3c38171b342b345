#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string output;
};

Outcome cli(const std::string& args) {
  const fs::path log = fs::path(NOISYEMO_TEST_TMP) / "cli.log";
  fs::create_directories(log.parent_path());
  const std::string cmd = std::string("\"") + NOISYEMO_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  Outcome o;
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  std::ostringstream s;
  s << in.rdbuf();
  o.output = s.str();
  return o;
}

fs::path write(const std::string& name, const std::string& text) {
  const fs::path p = fs::path(NOISYEMO_TEST_TMP) / name;
  fs::create_directories(p.parent_path());
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(cli("").code == 2);
  CHECK(cli("frobnicate").code == 2);
  CHECK(cli("selftest --profile enormous").code == 2);
  CHECK(cli("run").code == 2);
  CHECK(cli("run --profile quick --config x.json").code == 2);
  CHECK(cli("stats /nonexistent/dir").code == 2);
  CHECK(cli("--help").code == 0);
}

TEST_CASE("malformed config reports file and line") {
  const auto bad = write("bad.json", "{\n  \"runs\": 1,\n  \"cells\": [\n    {\"algorithm\": \"annealing\"}\n  ]\n}\n");
  const auto r = cli("run --config \"" + bad.string() + "\"");
  CHECK(r.code == 2);
  CHECK(r.output.find("bad.json:4:") != std::string::npos);
  const auto broken = write("broken.json", "{\n  \"runs\": 1,\n  \"cells\": [\n");
  CHECK(cli("run --config \"" + broken.string() + "\"").code == 2);
}

TEST_CASE("run, plotdata and hv end to end") {
  const fs::path out = fs::path(NOISYEMO_TEST_TMP) / "cli-run";
  fs::remove_all(out);
  const auto cfg = write("tiny.json", R"({"runs": 2, "base_seed": 5, "defaults": {"mu": 4, "budget": {"evaluations": 40}},
    "cells": [{"problem": {"family": "grating", "n": 4, "positions": [0, 0.5]}, "algorithm": "sms-emoa"},
              {"problem": {"family": "grating", "n": 4, "positions": [0, 0.5]}, "algorithm": "nsga2"}]})");
  auto r = cli("run --config \"" + cfg.string() + "\" --out \"" + out.string() + "\" --workers 2 --genotypes");
  REQUIRE(r.code == 0);
  CHECK(fs::exists(out / "runs.csv"));
  CHECK(fs::exists(out / "summary.json"));
  r = cli("run --config \"" + cfg.string() + "\" --out \"" + out.string() + "\"");
  CHECK(r.code == 0);
  CHECK(r.output.find("4 resumed") != std::string::npos);

  CHECK(cli("plotdata \"" + out.string() + "\" colour=blue").code == 2);
  CHECK(cli("plotdata \"" + out.string() + "\" kind=perceived run=c000-r000").code == 0);
  CHECK(cli("posthoc \"" + out.string() + "\" --mode ellipse").code == 0);
  CHECK(cli("stats \"" + out.string() + "\"").code == 0);

  const auto front = write("front.csv", "f1,f2\n1,0.2\n0.5,0.8\n");
  r = cli("hv \"" + front.string() + "\" --ref 0,0");
  CHECK(r.code == 0);
  CHECK(std::stod(r.output) == doctest::Approx(0.5));
  r = cli("hv \"" + front.string() + "\" --ref 2,2 --sense min");
  CHECK(std::stod(r.output) == doctest::Approx(1.8 + 1.8 - 1.2));
}
