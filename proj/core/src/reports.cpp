#include "noisyemo/reports.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "noisyemo/campaign.hpp"
#include "noisyemo/csv.hpp"
#include "noisyemo/indicators.hpp"
#include "noisyemo/pareto.hpp"
#include "noisyemo/posthoc.hpp"
#include "noisyemo/statistics.hpp"

namespace noisyemo {

namespace fs = std::filesystem;

PosthocMode posthoc_mode_from_string(const std::string& text) {
  if (text == "reeval") return PosthocMode::reeval;
  if (text == "sample") return PosthocMode::sample;
  if (text == "reconstruct") return PosthocMode::reconstruct;
  if (text == "ellipse") return PosthocMode::ellipse;
  throw UsageError("unknown posthoc mode '" + text + "' (expected reeval, sample, reconstruct or ellipse)");
}

namespace {

// Stream of the posthoc noise draws of one archive member.
constexpr std::uint64_t kPosthocTag = 0x706f7374686f63ULL;

std::vector<SampleCloud> make_clouds(const StoredRun& run, int k, double eps2) {
  std::vector<SampleCloud> clouds;
  const RandomStream base(derive_seed(run.config.seed, kPosthocTag), 0);
  for (std::size_t i = 0; i < run.members.size(); ++i) {
    RandomStream s = base.split(i);
    clouds.push_back(sample_cloud(run.members[i].x, run.config.landscape, eps2, k, s, i));
  }
  return clouds;
}

std::vector<std::string> objective_fields(const ObjectiveVector& f, std::size_t m) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back(i < f.size() ? format_double(f[i]) : "");
  return out;
}

// Replaces all rows of `kind` belonging to `runs` in fronts.csv by `rows`.
void merge_fronts(const fs::path& dir, const std::string& kind, const std::set<std::string>& runs,
                  std::vector<std::vector<std::string>> rows, std::size_t m, std::size_t n) {
  const fs::path path = dir / "fronts.csv";
  CsvTable table;
  if (fs::exists(path)) {
    table = read_csv(path);
  } else {
    table.header = fronts_header(m, n);
  }
  const auto run_col = table.column("run_id");
  const auto kind_col = table.column("kind");
  std::erase_if(table.rows, [&](const std::vector<std::string>& r) {
    return r[kind_col] == kind && runs.count(r[run_col]) > 0;
  });
  for (auto& r : rows) {
    r.resize(table.header.size());
    table.rows.push_back(std::move(r));
  }
  write_csv(path, table);
}

std::size_t fronts_width(const fs::path& dir, const char* prefix) {
  const fs::path path = dir / "fronts.csv";
  if (!fs::exists(path)) return 0;
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  std::size_t count = 0;
  std::stringstream ss(header);
  std::string col;
  while (std::getline(ss, col, ',')) {
    if (col.rfind(prefix, 0) == 0) ++count;
  }
  return count;
}

}  // namespace

void posthoc_command(const PosthocOptions& options, std::ostream& log) {
  std::vector<StoredRun> runs;
  try {
    runs = load_runs(options.dir);
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  if (options.run) {
    std::erase_if(runs, [&](const StoredRun& r) { return r.id != *options.run; });
    if (runs.empty()) throw UsageError("no run with id '" + *options.run + "'");
  }
  if (options.samples < 2) throw UsageError("--samples must be >= 2");

  std::size_t m = fronts_width(options.dir, "f");
  std::size_t n = fronts_width(options.dir, "x");
  for (const auto& r : runs) {
    m = std::max<std::size_t>(m, static_cast<std::size_t>(r.config.landscape.m));
    if (options.genotypes) n = std::max<std::size_t>(n, static_cast<std::size_t>(r.config.landscape.n));
  }
  std::set<std::string> ids;
  for (const auto& r : runs) ids.insert(r.id);

  auto eps_for = [&](const StoredRun& r) { return options.eps2.value_or(r.eps2); };

  switch (options.mode) {
    case PosthocMode::reeval: {
      std::vector<std::vector<std::string>> rows;
      for (const auto& r : runs) {
        const auto ideal = reevaluate_ideal(r.genotypes(), r.config.landscape);
        for (std::size_t i = 0; i < ideal.all.size(); ++i) {
          std::vector<std::string> row{r.id, std::to_string(r.generations), "ideal", std::to_string(i)};
          const auto f = objective_fields(ideal.all[i], m);
          row.insert(row.end(), f.begin(), f.end());
          for (std::size_t j = 0; j < n; ++j) row.push_back(j < r.members[i].x.size() ? format_double(r.members[i].x[j]) : "");
          rows.push_back(std::move(row));
        }
        log << r.id << ": ideal hypervolume " << format_double(hypervolume(ideal.all, r.config.reference_point))
            << " (" << ideal.front.points.size() << " non-dominated of " << ideal.all.size() << ")\n";
      }
      merge_fronts(options.dir, "ideal", ids, std::move(rows), m, n);
      break;
    }
    case PosthocMode::sample: {
      std::ostringstream out;
      std::vector<std::string> header{"run_id", "member_index", "draw", "eps2"};
      for (std::size_t i = 1; i <= m; ++i) header.push_back("f" + std::to_string(i));
      write_csv_row(out, header);
      for (const auto& r : runs) {
        const auto clouds = make_clouds(r, options.samples, eps_for(r));
        for (const auto& c : clouds) {
          for (std::size_t d = 0; d < c.draws.size(); ++d) {
            std::vector<std::string> row{r.id, std::to_string(c.source_index), std::to_string(d),
                                         format_double(eps_for(r))};
            const auto f = objective_fields(c.draws[d], m);
            row.insert(row.end(), f.begin(), f.end());
            write_csv_row(out, row);
          }
        }
        log << r.id << ": " << clouds.size() * static_cast<std::size_t>(options.samples) << " cloud rows\n";
      }
      write_file_atomic(options.dir / "clouds.csv", out.str());
      break;
    }
    case PosthocMode::reconstruct: {
      std::vector<std::vector<std::string>> rows;
      for (const auto& r : runs) {
        const auto clouds = make_clouds(r, options.samples, eps_for(r));
        // keep the source member of every pooled draw
        std::vector<ObjectiveVector> pooled;
        std::vector<std::size_t> source;
        for (const auto& c : clouds) {
          for (const auto& d : c.draws) {
            pooled.push_back(d);
            source.push_back(c.source_index);
          }
        }
        const auto keep = nondominated_indices(pooled);
        std::vector<ObjectiveVector> front;
        for (std::size_t k : keep) {
          std::vector<std::string> row{r.id, std::to_string(r.generations), "sampled", std::to_string(source[k])};
          const auto f = objective_fields(pooled[k], m);
          row.insert(row.end(), f.begin(), f.end());
          rows.push_back(std::move(row));
          front.push_back(pooled[k]);
        }
        log << r.id << ": reconstructed front with " << front.size() << " points, hypervolume "
            << format_double(hypervolume(front, r.config.reference_point)) << " (perceived "
            << format_double(r.metrics.perceived_hv) << ")\n";
      }
      merge_fronts(options.dir, "sampled", ids, std::move(rows), m, n);
      break;
    }
    case PosthocMode::ellipse: {
      std::ostringstream out;
      write_csv_row(out, {"run_id", "member_index", "mode", "center_f1", "center_f2", "axis1", "axis2", "angle"});
      for (const auto& r : runs) {
        if (r.config.landscape.m != 2) throw UsageError("ellipses need two objectives (run " + r.id + ")");
        const auto clouds = make_clouds(r, options.samples, eps_for(r));
        for (std::size_t i = 0; i < clouds.size(); ++i) {
          const auto e = disturbance_ellipse(clouds[i]);
          write_csv_row(out, {r.id, std::to_string(i), "empirical", format_double(e.center[0]),
                              format_double(e.center[1]), format_double(e.axes[0]), format_double(e.axes[1]),
                              format_double(e.angle())});
          const auto a = disturbance_ellipse(r.members[i].x, r.config.landscape, eps_for(r));
          write_csv_row(out, {r.id, std::to_string(i), "analytic", format_double(a.center[0]),
                              format_double(a.center[1]), format_double(a.axes[0]), format_double(a.axes[1]),
                              format_double(a.angle())});
        }
      }
      write_file_atomic(options.dir / "ellipses.csv", out.str());
      break;
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

const char* kMetrics[] = {"perceived_hv",      "ideal_hv",          "delta_v_perceived",
                          "delta_v_ideal",     "delta_d_perceived", "delta_d_ideal"};

bool higher_is_better(const std::string& metric) { return metric.find("_hv") != std::string::npos; }

struct Block {
  std::string problem;
  std::string n;
  std::string eps2;
  bool operator<(const Block& o) const {
    return std::tie(problem, n, eps2) < std::tie(o.problem, o.n, o.eps2);
  }
};

std::vector<double> finite_values(const std::vector<std::string>& fields) {
  std::vector<double> out;
  for (const auto& f : fields) {
    if (f.empty()) continue;
    const double v = parse_double(f);
    if (std::isfinite(v)) out.push_back(v);
  }
  return out;
}

}  // namespace

void stats_command(const StatsOptions& options, std::ostream& out, std::ostream& log) {
  if (std::find(std::begin(kMetrics), std::end(kMetrics), options.metric) == std::end(kMetrics)) {
    throw UsageError("unknown metric '" + options.metric + "'");
  }
  CsvTable runs;
  try {
    runs = read_csv(options.dir / "runs.csv");
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  const auto c_problem = runs.column("problem");
  const auto c_n = runs.column("n");
  const auto c_eps = runs.column("eps2");
  const auto c_alg = runs.column("algorithm");
  const auto c_scheme = runs.column("scheme");

  // block -> algorithm label -> metric -> values
  std::map<Block, std::map<std::string, std::map<std::string, std::vector<std::string>>>> groups;
  for (const auto& row : runs.rows) {
    Block b{row[c_problem], row[c_n], row[c_eps]};
    std::string alg = row[c_alg];
    if (!row[c_scheme].empty()) alg += "-" + row[c_scheme];
    for (const char* metric : kMetrics) groups[b][alg][metric].push_back(row[runs.column(metric)]);
  }

  std::ostringstream stats;
  write_csv_row(stats, {"problem", "n", "eps2", "algorithm", "metric", "count", "min", "q1", "median", "q3", "max",
                        "mean", "std"});
  std::ostringstream tests;
  write_csv_row(tests, {"problem", "n", "eps2", "a", "b", "metric", "u_a", "u_b", "p_value", "symbol"});

  // printed matrix: (problem, n) -> eps2 rows x pair columns
  std::map<std::pair<std::string, std::string>, std::map<std::string, std::map<std::string, std::string>>> matrix;
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> matrix_columns;

  for (const auto& [block, algs] : groups) {
    for (const auto& [alg, metrics] : algs) {
      for (const auto& [metric, fields] : metrics) {
        const auto values = finite_values(fields);
        if (values.empty()) continue;
        const auto b = box_stats(values);
        write_csv_row(stats, {block.problem, block.n, block.eps2, alg, metric, std::to_string(b.count),
                              format_double(b.min), format_double(b.q1), format_double(b.median),
                              format_double(b.q3), format_double(b.max), format_double(b.mean),
                              format_double(b.stddev)});
      }
    }
    std::vector<std::string> names;
    for (const auto& [alg, _] : algs) names.push_back(alg);
    for (std::size_t i = 0; i < names.size(); ++i) {
      for (std::size_t j = i + 1; j < names.size(); ++j) {
        for (const char* metric : kMetrics) {
          const auto a = finite_values(algs.at(names[i]).at(metric));
          const auto bv = finite_values(algs.at(names[j]).at(metric));
          std::string symbol;
          std::vector<std::string> row{block.problem, block.n, block.eps2, names[i], names[j], metric};
          if (a.size() < 2 || bv.size() < 2) {
            if (metric == options.metric) {
              log << "warning: " << block.problem << " n=" << block.n << " eps2=" << block.eps2 << " " << names[i]
                  << "/" << names[j] << ": fewer than two runs, U-test skipped\n";
            }
            row.insert(row.end(), {"", "", "", ""});
          } else {
            const auto r = mann_whitney(a, bv, options.alpha, higher_is_better(metric));
            symbol = to_symbol(r.direction);
            row.insert(row.end(), {format_double(r.u_a), format_double(r.u_b), format_double(r.p_value), symbol});
          }
          write_csv_row(tests, row);
          if (metric == options.metric) {
            const auto key = std::make_pair(block.problem, block.n);
            const std::string column = names[i] + "/" + names[j];
            auto& cols = matrix_columns[key];
            if (std::find(cols.begin(), cols.end(), column) == cols.end()) cols.push_back(column);
            matrix[key][block.eps2][column] = symbol.empty() ? "." : symbol;
          }
        }
      }
    }
  }
  write_file_atomic(options.dir / "stats.csv", stats.str());
  write_file_atomic(options.dir / "tests.csv", tests.str());

  for (const auto& [key, rows] : matrix) {
    out << key.first << " n=" << key.second << " (" << options.metric << ", alpha=" << options.alpha << ")\n";
    const auto& cols = matrix_columns[key];
    out << "eps2";
    for (const auto& c : cols) out << "  " << c;
    out << "\n";
    for (const auto& [eps, cells] : rows) {
      out << eps;
      for (const auto& c : cols) {
        const auto it = cells.find(c);
        out << "  " << std::string(c.size() > 1 ? c.size() - 1 : 0, ' ') << (it == cells.end() ? "." : it->second);
      }
      out << "\n";
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

// "3" -> "c003"; anything else is taken as the tag itself.
std::string cell_tag(const std::string& value) {
  if (value.empty() || !std::all_of(value.begin(), value.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
    return value;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "c%03lu", std::stoul(value));
  return buf;
}

}  // namespace

void plotdata_command(const PlotOptions& options, std::ostream& out) {
  std::map<std::string, std::string> filters;
  for (const auto& s : options.selection) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw UsageError("selection '" + s + "' is not key=value");
    const auto key = s.substr(0, eq);
    if (key != "kind" && key != "run" && key != "cell" && key != "generation" && key != "member") {
      throw UsageError("unknown selection key '" + key + "'");
    }
    filters[key] = s.substr(eq + 1);
  }
  const bool ellipses = filters.count("kind") && filters["kind"] == "ellipse";
  if (filters.count("kind") && !ellipses) {
    try {
      front_kind_from_string(filters["kind"]);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  fs::path path = options.input;
  if (fs::is_directory(path)) path /= ellipses ? "ellipses.csv" : "fronts.csv";
  CsvTable table;
  try {
    table = read_csv(path);
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  auto match = [&](const std::vector<std::string>& row) {
    for (const auto& [key, value] : filters) {
      if (key == "kind") {
        if (!ellipses && row[table.column("kind")] != value) return false;
      } else if (key == "run") {
        if (row[table.column("run_id")] != value) return false;
      } else if (key == "cell") {
        const auto& id = row[table.column("run_id")];
        const std::string cell = cell_tag(value);
        if (id.rfind(cell + "-", 0) != 0 && id != "analytic-" + cell) return false;
      } else if (key == "generation") {
        if (row[table.column("generation")] != value) return false;
      } else if (key == "member") {
        if (row[table.column("member_index")] != value) return false;
      }
    }
    return true;
  };
  std::ostringstream buf;
  write_csv_row(buf, table.header);
  for (const auto& row : table.rows) {
    if (match(row)) write_csv_row(buf, row);
  }
  if (options.out.empty()) {
    out << buf.str();
  } else {
    write_file_atomic(options.out, buf.str());
  }
}

double hv_command(const HvOptions& options) {
  CsvTable table;
  try {
    table = read_csv(options.input);
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  std::vector<std::size_t> cols;
  for (std::size_t i = 1;; ++i) {
    const auto c = table.find("f" + std::to_string(i));
    if (!c) break;
    cols.push_back(*c);
  }
  if (cols.empty()) throw UsageError("no f1..fm columns in " + options.input.string());
  const Sense sense = [&]() {
    try {
      return sense_from_string(options.sense);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  std::vector<double> ref = options.reference;
  if (ref.empty()) ref.assign(cols.size(), 0.0);
  const auto kind_col = table.find("kind");
  const auto run_col = table.find("run_id");
  std::vector<ObjectiveVector> points;
  for (const auto& row : table.rows) {
    if (options.kind && (!kind_col || row[*kind_col] != *options.kind)) continue;
    if (options.run && (!run_col || row[*run_col] != *options.run)) continue;
    std::vector<double> v;
    for (std::size_t c = 0; c < ref.size() && c < cols.size(); ++c) {
      if (row[cols[c]].empty()) break;
      v.push_back(parse_double(row[cols[c]]));
    }
    if (v.size() != ref.size()) continue;
    points.emplace_back(std::move(v), sense);
  }
  if (ref.size() != cols.size() && options.reference.size() > cols.size()) {
    throw UsageError("reference point has more components than the file has objectives");
  }
  try {
    return hypervolume(points, ObjectiveVector(ref, sense));
  } catch (const NotImplementedError& e) {
    throw UsageError(e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

}  // namespace noisyemo
