#include "noisyemo/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace noisyemo {

using nlohmann::json;

std::string to_string(const JsonPath& path) {
  std::string out;
  for (const auto& part : path) {
    out += '/';
    if (const auto* s = std::get_if<std::string>(&part)) {
      out += *s;
    } else {
      out += std::to_string(std::get<std::size_t>(part));
    }
  }
  return out.empty() ? "/" : out;
}

// ---------------------------------------------------------------------------
// Source positions. nlohmann::json keeps no positions, so the raw text is
// walked again along the path once an error is known.

namespace {

class Scanner {
 public:
  explicit Scanner(const std::string& text) : text_(text) {}

  // Offset of the value at `path`, or of the deepest ancestor found.
  std::size_t find(const JsonPath& path) {
    skip_ws();
    std::size_t found = pos_;
    for (const auto& part : path) {
      if (!descend(part)) break;
      found = pos_;
    }
    return found;
  }

 private:
  bool descend(const std::variant<std::string, std::size_t>& part) {
    if (pos_ >= text_.size()) return false;
    if (const auto* key = std::get_if<std::string>(&part)) {
      if (text_[pos_] != '{') return false;
      ++pos_;
      while (true) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] == '}') return false;
        const std::string k = read_string();
        skip_ws();
        ++pos_;  // ':'
        skip_ws();
        if (k == *key) return true;
        skip_value();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
      }
    }
    const std::size_t index = std::get<std::size_t>(part);
    if (text_[pos_] != '[') return false;
    ++pos_;
    for (std::size_t i = 0;; ++i) {
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] == ']') return false;
      if (i == index) return true;
      skip_value();
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
    }
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string read_string() {
    std::string out;
    if (pos_ >= text_.size() || text_[pos_] != '"') return out;
    ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') ++pos_;
      if (pos_ < text_.size()) out += text_[pos_++];
    }
    ++pos_;
    return out;
  }

  void skip_value() {
    skip_ws();
    if (pos_ >= text_.size()) return;
    const char c = text_[pos_];
    if (c == '"') {
      read_string();
    } else if (c == '{' || c == '[') {
      int depth = 0;
      while (pos_ < text_.size()) {
        const char d = text_[pos_];
        if (d == '"') {
          read_string();
          continue;
        }
        if (d == '{' || d == '[') ++depth;
        if (d == '}' || d == ']') {
          if (--depth == 0) {
            ++pos_;
            return;
          }
        }
        ++pos_;
      }
    } else {
      while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != '}' && text_[pos_] != ']' &&
             !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

// Error raised while walking the document; converted to a line later.
struct PathError {
  JsonPath path;
  std::string message;
};

[[noreturn]] void fail(const JsonPath& path, const std::string& message) { throw PathError{path, message}; }

JsonPath child(JsonPath path, std::variant<std::string, std::size_t> part) {
  path.push_back(std::move(part));
  return path;
}

}  // namespace

std::size_t locate_line(const std::string& text, const JsonPath& path) {
  if (!json::accept(text)) return 0;
  Scanner scanner(text);
  return line_of_offset(text, scanner.find(path));
}

// ---------------------------------------------------------------------------
// Typed field access with path-aware errors.

namespace {

double get_number(const json& v, const JsonPath& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

long get_integer(const json& v, const JsonPath& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<long>();
}

std::string get_string(const json& v, const JsonPath& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

const json& get_object(const json& v, const JsonPath& path) {
  if (!v.is_object()) fail(path, "expected an object");
  return v;
}

const json& get_array(const json& v, const JsonPath& path) {
  if (!v.is_array()) fail(path, "expected an array");
  return v;
}

std::vector<double> get_numbers(const json& v, const JsonPath& path) {
  std::vector<double> out;
  std::size_t i = 0;
  for (const auto& e : get_array(v, path)) out.push_back(get_number(e, child(path, i++)));
  return out;
}

template <typename F>
auto parse_with(const json& v, const JsonPath& path, F&& f) {
  const auto text = get_string(v, path);
  try {
    return f(text);
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

}  // namespace

std::string to_string(Family f) { return f == Family::multi_sphere ? "multi-sphere" : "diffraction-grating"; }

Family family_from_string(const std::string& text) {
  if (text == "multi-sphere" || text == "sphere") return Family::multi_sphere;
  if (text == "diffraction-grating" || text == "grating") return Family::diffraction_grating;
  throw std::invalid_argument("unknown problem family '" + text + "'");
}

namespace {

LandscapeSpec parse_problem(const json& p, const JsonPath& path, double eps2) {
  get_object(p, path);
  if (!p.contains("family")) fail(path, "problem needs a 'family'");
  const Family family = parse_with(p["family"], child(path, "family"), family_from_string);
  int n = 10;
  int m = 2;
  double b = 1.0, h = 4.0;
  std::vector<double> positions;
  std::string unit = "period";
  for (const auto& [key, value] : p.items()) {
    const auto at = child(path, key);
    if (key == "family") continue;
    if (key == "n") {
      n = static_cast<int>(get_integer(value, at));
    } else if (key == "m") {
      m = static_cast<int>(get_integer(value, at));
    } else if (key == "slit_width") {
      b = get_number(value, at);
    } else if (key == "slit_spacing") {
      h = get_number(value, at);
    } else if (key == "positions") {
      positions = get_numbers(value, at);
    } else if (key == "positions_unit") {
      unit = get_string(value, at);
      if (unit != "period" && unit != "absolute") fail(at, "positions_unit must be 'period' or 'absolute'");
    } else {
      fail(at, "unknown problem key '" + key + "'");
    }
  }
  const NoiseModel noise = eps2 > 0.0 ? NoiseModel::gaussian(eps2) : NoiseModel::none();
  LandscapeSpec spec;
  if (family == Family::multi_sphere) {
    if (p.contains("positions")) fail(child(path, "positions"), "multi-sphere has no screen positions");
    spec = LandscapeSpec::multi_sphere(n, m, noise);
  } else {
    if (!(h > 0.0)) fail(child(path, "slit_spacing"), "slit_spacing must be > 0");
    if (positions.empty()) positions = {0.0, 0.5};
    if (p.contains("m") && static_cast<std::size_t>(m) != positions.size()) {
      fail(child(path, "m"), "m differs from the number of positions");
    }
    if (unit == "period") {
      for (double& q : positions) q *= grating_period(h);
    }
    spec = LandscapeSpec::diffraction_grating(n, positions, b, h, noise);
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  return spec;
}

// Cell under construction: fragments are applied in order, later keys win.
struct Draft {
  std::string label;
  std::optional<json> problem;
  JsonPath problem_path;
  double eps2 = 0.0;
  OptimizerConfig cfg;
  bool lambda_set = false;
  std::optional<std::vector<double>> reference;
  JsonPath reference_path;
  std::optional<int> runs;
  std::map<std::string, double> kernel_overrides;
};

void apply_fragment(Draft& d, const json& fragment, const JsonPath& path) {
  get_object(fragment, path);
  for (const auto& [key, value] : fragment.items()) {
    const auto at = child(path, key);
    if (key == "label") {
      d.label = get_string(value, at);
    } else if (key == "problem") {
      get_object(value, at);
      d.problem = value;
      d.problem_path = at;
    } else if (key == "noise") {
      d.eps2 = get_number(value, at);
      if (d.eps2 < 0.0) fail(at, "noise variance must be >= 0");
    } else if (key == "algorithm") {
      d.cfg.algorithm = parse_with(value, at, algorithm_from_string);
    } else if (key == "scheme") {
      d.cfg.scheme = parse_with(value, at, scheme_from_string);
    } else if (key == "reeval_interval") {
      d.cfg.reeval_interval = static_cast<int>(get_integer(value, at));
    } else if (key == "mu") {
      d.cfg.mu = static_cast<int>(get_integer(value, at));
    } else if (key == "lambda") {
      d.cfg.lambda = static_cast<int>(get_integer(value, at));
      d.lambda_set = true;
    } else if (key == "runs") {
      d.runs = static_cast<int>(get_integer(value, at));
      if (*d.runs < 1) fail(at, "runs must be >= 1");
    } else if (key == "budget") {
      get_object(value, at);
      for (const auto& [bk, bv] : value.items()) {
        if (bk == "evaluations") {
          d.cfg.budget.evaluations = get_integer(bv, child(at, bk));
        } else if (bk == "generations") {
          d.cfg.budget.generations = get_integer(bv, child(at, bk));
        } else {
          fail(child(at, bk), "unknown budget key '" + bk + "'");
        }
      }
    } else if (key == "reference_point") {
      d.reference = get_numbers(value, at);
      d.reference_path = at;
    } else if (key == "success_rule") {
      d.cfg.success_rule = parse_with(value, at, success_rule_from_string);
    } else if (key == "sigma0") {
      d.cfg.sigma0 = get_number(value, at);
      if (!(d.cfg.sigma0 > 0.0)) fail(at, "sigma0 must be > 0");
    } else if (key == "trace_stride") {
      d.cfg.trace_stride = static_cast<int>(get_integer(value, at));
    } else if (key == "init") {
      d.cfg.init = parse_with(value, at, init_mode_from_string);
    } else if (key == "seed_points") {
      d.cfg.seed_points.clear();
      std::size_t i = 0;
      for (const auto& sp : get_array(value, at)) d.cfg.seed_points.push_back(get_numbers(sp, child(at, i++)));
    } else if (key == "kernel") {
      static const char* names[] = {"target_success", "success_smoothing", "damping",
                                    "path_rate",      "covariance_rate",   "success_threshold"};
      for (const auto& [kk, kv] : get_object(value, at).items()) {
        if (std::find(std::begin(names), std::end(names), kk) == std::end(names)) {
          fail(child(at, kk), "unknown kernel parameter '" + kk + "'");
        }
        d.kernel_overrides[kk] = get_number(kv, child(at, kk));
      }
    } else if (key == "variation") {
      get_object(value, at);
      for (const auto& [vk, vv] : value.items()) {
        const double x = get_number(vv, child(at, vk));
        if (vk == "crossover_probability") {
          d.cfg.variation.crossover_probability = x;
        } else if (vk == "crossover_eta") {
          d.cfg.variation.crossover_eta = x;
        } else if (vk == "mutation_eta") {
          d.cfg.variation.mutation_eta = x;
        } else if (vk == "mutation_probability") {
          d.cfg.variation.mutation_probability = x;
        } else {
          fail(child(at, vk), "unknown variation parameter '" + vk + "'");
        }
      }
    } else {
      fail(at, "unknown key '" + key + "'");
    }
  }
}

std::string format_eps(double eps2) {
  std::ostringstream out;
  out << eps2;
  return out.str();
}

CampaignCell finish(Draft d, std::size_t index, int default_runs, const JsonPath& path) {
  if (!d.problem) fail(path, "cell has no 'problem'");
  auto& cfg = d.cfg;
  cfg.landscape = parse_problem(*d.problem, d.problem_path, d.eps2);
  if (!d.lambda_set) cfg.lambda = cfg.algorithm == Algorithm::sms_emoa ? 1 : cfg.mu;
  if (!d.kernel_overrides.empty()) {
    auto k = KernelParameters::defaults(cfg.landscape.n);
    for (const auto& [name, v] : d.kernel_overrides) {
      if (name == "target_success") k.target_success = v;
      if (name == "success_smoothing") k.success_smoothing = v;
      if (name == "damping") k.damping = v;
      if (name == "path_rate") k.path_rate = v;
      if (name == "covariance_rate") k.covariance_rate = v;
      if (name == "success_threshold") k.success_threshold = v;
    }
    cfg.kernel = k;
  }
  if (d.reference) {
    if (d.reference->size() != static_cast<std::size_t>(cfg.landscape.m)) {
      fail(d.reference_path, "reference point needs one value per objective");
    }
    cfg.reference_point = ObjectiveVector(*d.reference, cfg.landscape.senses);
  } else {
    cfg.reference_point = default_reference_point(cfg.landscape);
  }
  if (cfg.budget.evaluations < 0 && cfg.budget.generations < 0) fail(path, "cell has no budget");
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    fail(path, e.what());
  }
  CampaignCell cell;
  cell.index = index;
  cell.eps2 = d.eps2;
  cell.runs = d.runs.value_or(default_runs);
  cell.optimizer = cfg;
  if (d.label.empty()) {
    d.label = cfg.landscape.label() + "-e" + format_eps(d.eps2) + "-" + to_string(cfg.algorithm);
    if (cfg.algorithm == Algorithm::mo_cma) d.label += "-" + to_string(cfg.scheme);
  }
  cell.label = d.label;
  return cell;
}

CampaignConfig build_campaign(const json& doc) {
  const JsonPath root;
  get_object(doc, root);
  CampaignConfig c;
  const json* defaults = nullptr;
  for (const auto& [key, value] : doc.items()) {
    const auto at = child(root, key);
    if (key == "name") {
      c.name = get_string(value, at);
    } else if (key == "base_seed") {
      if (!value.is_number_unsigned() && !value.is_number_integer()) fail(at, "expected an integer");
      if (value.is_number_integer() && value.get<long long>() < 0) fail(at, "base_seed must be >= 0");
      c.base_seed = value.get<std::uint64_t>();
    } else if (key == "runs") {
      c.runs = static_cast<int>(get_integer(value, at));
      if (c.runs < 1) fail(at, "runs must be >= 1");
    } else if (key == "output") {
      c.output = get_string(value, at);
    } else if (key == "defaults") {
      defaults = &get_object(value, at);
    } else if (key != "cells" && key != "matrix") {
      fail(at, "unknown key '" + key + "'");
    }
  }

  auto start = [&]() {
    Draft d;
    if (defaults) apply_fragment(d, *defaults, {std::string("defaults")});
    return d;
  };

  if (doc.contains("cells")) {
    const JsonPath at{std::string("cells")};
    std::size_t i = 0;
    for (const auto& cell : get_array(doc["cells"], at)) {
      const auto cell_path = child(at, i++);
      Draft d = start();
      apply_fragment(d, cell, cell_path);
      c.cells.push_back(finish(std::move(d), c.cells.size(), c.runs, cell_path));
    }
  }

  if (doc.contains("matrix")) {
    const JsonPath at{std::string("matrix")};
    const auto& matrix = get_object(doc["matrix"], at);
    for (const auto& [key, value] : matrix.items()) {
      if (key != "problems" && key != "noise" && key != "optimizers") fail(child(at, key), "unknown matrix axis");
      if (get_array(value, child(at, key)).empty()) fail(child(at, key), "matrix axis is empty");
    }
    const json empty_axis = json::array({json::object()});
    const json& problems = matrix.contains("problems") ? matrix["problems"] : empty_axis;
    const json& optimizers = matrix.contains("optimizers") ? matrix["optimizers"] : empty_axis;
    const json noise_default = json::array({nullptr});
    const json& noise = matrix.contains("noise") ? matrix["noise"] : noise_default;
    for (std::size_t pi = 0; pi < problems.size(); ++pi) {
      for (std::size_t ni = 0; ni < noise.size(); ++ni) {
        for (std::size_t oi = 0; oi < optimizers.size(); ++oi) {
          Draft d = start();
          const JsonPath pp{std::string("matrix"), std::string("problems"), pi};
          const JsonPath np{std::string("matrix"), std::string("noise"), ni};
          const JsonPath op{std::string("matrix"), std::string("optimizers"), oi};
          if (matrix.contains("problems")) apply_fragment(d, problems[pi], pp);
          if (!noise[ni].is_null()) {
            d.eps2 = get_number(noise[ni], np);
            if (d.eps2 < 0.0) fail(np, "noise variance must be >= 0");
          }
          if (matrix.contains("optimizers")) apply_fragment(d, optimizers[oi], op);
          c.cells.push_back(finish(std::move(d), c.cells.size(), c.runs, matrix.contains("optimizers") ? op : at));
        }
      }
    }
  }
  if (c.cells.empty()) fail(root, "campaign defines no cells");
  return c;
}

}  // namespace

CampaignConfig parse_campaign(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what(), line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  try {
    return build_campaign(doc);
  } catch (const PathError& e) {
    throw ConfigError(to_string(e.path) + ": " + e.message, locate_line(text, e.path));
  }
}

CampaignConfig load_campaign(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_campaign(buf.str());
}

// ---------------------------------------------------------------------------

json landscape_to_json(const LandscapeSpec& spec) {
  json j;
  j["family"] = to_string(spec.family);
  j["n"] = spec.n;
  j["m"] = spec.m;
  if (spec.family == Family::diffraction_grating) {
    j["slit_width"] = spec.slit_width;
    j["slit_spacing"] = spec.slit_spacing;
    j["positions"] = spec.positions;
    j["positions_unit"] = "absolute";
  }
  return j;
}

LandscapeSpec landscape_from_json(const json& problem, double eps2) {
  try {
    return parse_problem(problem, {}, eps2);
  } catch (const PathError& e) {
    throw ConfigError(to_string(e.path) + ": " + e.message);
  }
}

json optimizer_to_json(const OptimizerConfig& cfg) {
  json j;
  j["problem"] = landscape_to_json(cfg.landscape);
  j["noise"] = cfg.landscape.noise.variance();
  j["algorithm"] = to_string(cfg.algorithm);
  j["scheme"] = to_string(cfg.scheme);
  j["reeval_interval"] = cfg.reeval_interval;
  j["mu"] = cfg.mu;
  j["lambda"] = cfg.lambda;
  j["budget"] = {{"evaluations", cfg.budget.evaluations}, {"generations", cfg.budget.generations}};
  j["seed"] = cfg.seed;
  j["init"] = to_string(cfg.init);
  j["seed_points"] = cfg.seed_points;
  j["reference_point"] = cfg.reference_point.values;
  j["success_rule"] = to_string(cfg.success_rule);
  const auto k = cfg.kernel_parameters();
  j["kernel"] = {{"target_success", k.target_success},   {"success_smoothing", k.success_smoothing},
                 {"damping", k.damping},                 {"path_rate", k.path_rate},
                 {"covariance_rate", k.covariance_rate}, {"success_threshold", k.success_threshold}};
  j["sigma0"] = cfg.initial_sigma();
  j["variation"] = {{"crossover_probability", cfg.variation.crossover_probability},
                    {"crossover_eta", cfg.variation.crossover_eta},
                    {"mutation_eta", cfg.variation.mutation_eta},
                    {"mutation_probability", cfg.variation.mutation_probability}};
  j["trace_stride"] = cfg.effective_trace_stride();
  return j;
}

OptimizerConfig optimizer_from_json(const json& s) {
  OptimizerConfig cfg;
  try {
    cfg.landscape = landscape_from_json(s.at("problem"), s.at("noise").get<double>());
    cfg.algorithm = algorithm_from_string(s.at("algorithm").get<std::string>());
    cfg.scheme = scheme_from_string(s.at("scheme").get<std::string>());
    cfg.reeval_interval = s.at("reeval_interval").get<int>();
    cfg.mu = s.at("mu").get<int>();
    cfg.lambda = s.at("lambda").get<int>();
    cfg.budget.evaluations = s.at("budget").at("evaluations").get<long>();
    cfg.budget.generations = s.at("budget").at("generations").get<long>();
    cfg.seed = s.at("seed").get<std::uint64_t>();
    cfg.init = init_mode_from_string(s.at("init").get<std::string>());
    cfg.seed_points = s.at("seed_points").get<std::vector<DecisionVector>>();
    cfg.reference_point = ObjectiveVector(s.at("reference_point").get<std::vector<double>>(), cfg.landscape.senses);
    cfg.success_rule = success_rule_from_string(s.at("success_rule").get<std::string>());
    const auto& k = s.at("kernel");
    KernelParameters kp;
    kp.target_success = k.at("target_success").get<double>();
    kp.success_smoothing = k.at("success_smoothing").get<double>();
    kp.damping = k.at("damping").get<double>();
    kp.path_rate = k.at("path_rate").get<double>();
    kp.covariance_rate = k.at("covariance_rate").get<double>();
    kp.success_threshold = k.at("success_threshold").get<double>();
    cfg.kernel = kp;
    cfg.sigma0 = s.at("sigma0").get<double>();
    const auto& v = s.at("variation");
    cfg.variation.crossover_probability = v.at("crossover_probability").get<double>();
    cfg.variation.crossover_eta = v.at("crossover_eta").get<double>();
    cfg.variation.mutation_eta = v.at("mutation_eta").get<double>();
    cfg.variation.mutation_probability = v.at("mutation_probability").get<double>();
    cfg.trace_stride = s.at("trace_stride").get<int>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid run snapshot: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid run snapshot: ") + e.what());
  }
  return cfg;
}

std::uint64_t run_seed(std::uint64_t base_seed, std::size_t cell, std::size_t run) {
  return derive_seed(base_seed, cell, run);
}

// ---------------------------------------------------------------------------

std::string builtin_campaign(const std::string& profile) {
  json grating10 = {{"problem", {{"family", "diffraction-grating"}, {"n", 10}, {"positions", {0.0, 0.5}}}}};
  json sphere10 = {{"problem", {{"family", "multi-sphere"}, {"n", 10}, {"m", 2}}}};
  const json grid = {0.0, 0.001, 0.005, 0.01, 0.02, 0.05};
  const json all_optimizers = json::array({
      {{"algorithm", "mo-cma"}, {"scheme", "D"}},
      {{"algorithm", "mo-cma"}, {"scheme", "E"}},
      {{"algorithm", "mo-cma"}, {"scheme", "O"}},
      {{"algorithm", "sms-emoa"}},
      {{"algorithm", "nsga2"}},
  });
  json doc;
  doc["base_seed"] = 20140101;
  doc["defaults"] = {{"mu", 100}};
  if (profile == "quick") {
    doc["name"] = "quick";
    doc["runs"] = 3;
    grating10["budget"] = {{"evaluations", 20000}};
    sphere10["budget"] = {{"evaluations", 20000}};
    doc["matrix"] = {{"problems", {grating10, sphere10}},
                     {"noise", {0.0, 0.01}},
                     {"optimizers", all_optimizers}};
  } else if (profile == "paper-n10") {
    doc["name"] = "paper-n10";
    doc["runs"] = 10;
    grating10["budget"] = {{"evaluations", 1000000}};
    sphere10["budget"] = {{"generations", 10000}};
    doc["matrix"] = {{"problems", {grating10, sphere10}}, {"noise", grid}, {"optimizers", all_optimizers}};
  } else if (profile == "paper-n30") {
    doc["name"] = "paper-n30";
    doc["runs"] = 10;
    json grating30 = {{"problem", {{"family", "diffraction-grating"}, {"n", 30}, {"positions", {0.0, 0.5}}}},
                      {"budget", {{"evaluations", 2000000}}}};
    doc["matrix"] = {{"problems", {grating30}}, {"noise", grid}, {"optimizers", all_optimizers}};
  } else if (profile == "full") {
    doc["name"] = "full";
    doc["runs"] = 30;
    json problems = json::array();
    const std::pair<int, long> sizes[] = {{10, 1000000}, {30, 2000000}, {80, 5000000}};
    for (const auto& [n, evals] : sizes) {
      problems.push_back({{"problem", {{"family", "diffraction-grating"}, {"n", n}, {"positions", {0.0, 0.5}}}},
                          {"budget", {{"evaluations", evals}}}});
    }
    doc["matrix"] = {{"problems", problems}, {"noise", grid}, {"optimizers", all_optimizers}};
  } else {
    throw ConfigError("unknown profile '" + profile + "' (expected quick, paper-n10, paper-n30 or full)");
  }
  return doc.dump(2);
}

}  // namespace noisyemo
