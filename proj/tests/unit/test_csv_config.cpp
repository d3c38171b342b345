#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "doctest.h"
#include "noisyemo/config.hpp"
#include "noisyemo/csv.hpp"
#include "noisyemo/random.hpp"

using namespace noisyemo;

TEST_CASE("doubles round-trip through text") {
  RandomStream rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double v = std::ldexp(rng.uniform(-1, 1), static_cast<int>(rng.below(200)) - 100);
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(std::isnan(parse_double("nan")));
  CHECK_THROWS_AS(parse_double("1.5x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_double(""), std::invalid_argument);
  CHECK(parse_long("42") == 42);
}

TEST_CASE("csv escaping and parsing") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  std::ostringstream out;
  write_csv_row(out, {"x", "y,z"});
  write_csv_row(out, {"1", "two \"2\""});
  std::istringstream in(out.str());
  const auto t = parse_csv(in);
  REQUIRE(t.header.size() == 2);
  CHECK(t.header[1] == "y,z");
  CHECK(t.rows[0][1] == "two \"2\"");
  CHECK(t.column("x") == 0);
  CHECK_FALSE(t.find("w").has_value());
  CHECK_THROWS(t.column("w"));
}

TEST_CASE("campaign documents") {
  const std::string text = R"({
  "name": "t",
  "base_seed": 7,
  "runs": 2,
  "defaults": {"mu": 12, "budget": {"evaluations": 500}},
  "matrix": {
    "problems": [{"problem": {"family": "grating", "n": 6, "positions": [0, 0.5]}}],
    "noise": [0, 0.01],
    "optimizers": [{"algorithm": "mo-cma", "scheme": "O", "reeval_interval": 5}, {"algorithm": "sms-emoa"}]
  }
})";
  const auto c = parse_campaign(text);
  CHECK(c.name == "t");
  CHECK(c.base_seed == 7);
  REQUIRE(c.cells.size() == 4);
  const auto& o = c.cells[0].optimizer;
  CHECK(o.mu == 12);
  CHECK(o.scheme == Scheme::O);
  CHECK(o.reeval_interval == 5);
  CHECK(o.landscape.positions[1] == doctest::Approx(std::numbers::pi / 4));
  CHECK(c.cells[1].eps2 == 0.0);
  CHECK(c.cells[2].eps2 == 0.01);
  CHECK(c.cells[1].optimizer.algorithm == Algorithm::sms_emoa);
  CHECK(c.cells[1].optimizer.lambda == 1);
  CHECK(c.cells[0].runs == 2);

  // The snapshot reproduces the configuration.
  const auto back = optimizer_from_json(optimizer_to_json(o));
  CHECK(optimizer_to_json(back) == optimizer_to_json(o));
  CHECK(back.landscape == o.landscape);

  CHECK(run_seed(7, 0, 0) != run_seed(7, 0, 1));
  CHECK(run_seed(7, 1, 0) != run_seed(7, 0, 1));
}

TEST_CASE("config errors carry the line of the offending value") {
  const std::string text = "{\n  \"runs\": 1,\n  \"cells\": [\n    {\"problem\": {\"family\": \"sphere\", \"n\": 4},\n"
                           "     \"algorithm\": \"mo-cma\",\n     \"scheme\": \"Q\"}\n  ]\n}\n";
  try {
    parse_campaign(text);
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 6);
    CHECK(std::string(e.what()).find("scheme") != std::string::npos);
  }
  try {
    parse_campaign("{\n  \"runs\": 1,\n  \"cells\": [\n    {\"mu\": -3,\n \"problem\": {\"family\": \"sphere\"}}\n  ]\n}");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(e.line() >= 4);
  }
  try {
    parse_campaign("{\n  \"runs\": 1,\n  \"cells\": [\n    {\"mu\": 3,,}\n  ]\n}");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(parse_campaign("{\"colour\": 1}"), ConfigError);
  CHECK(locate_line("{\n\"a\": [1,\n 2]}", {std::string("a"), std::size_t{1}}) == 3);
}

TEST_CASE("built-in profiles parse") {
  for (const char* p : {"quick", "paper-n10", "paper-n30", "full"}) {
    const auto c = parse_campaign(builtin_campaign(p));
    CHECK_FALSE(c.cells.empty());
  }
  CHECK(parse_campaign(builtin_campaign("quick")).cells.size() == 20);
  CHECK(parse_campaign(builtin_campaign("paper-n10")).cells.size() == 60);
  CHECK_THROWS_AS(builtin_campaign("huge"), ConfigError);
}

TEST_CASE("shipped configs parse") {
  std::size_t seen = 0;
  for (const auto& e : std::filesystem::directory_iterator(NOISYEMO_CONFIG_DIR)) {
    if (e.path().extension() != ".json") continue;
    ++seen;
    CHECK_NOTHROW(load_campaign(e.path()));
  }
  CHECK(seen >= 4);
  const auto quick = load_campaign(std::filesystem::path(NOISYEMO_CONFIG_DIR) / "quick.json");
  const auto builtin = parse_campaign(builtin_campaign("quick"));
  REQUIRE(quick.cells.size() == builtin.cells.size());
  for (std::size_t i = 0; i < quick.cells.size(); ++i) {
    CHECK(optimizer_to_json(quick.cells[i].optimizer) == optimizer_to_json(builtin.cells[i].optimizer));
  }
}
