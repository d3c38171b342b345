#include "noisyemo/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "noisyemo/csv.hpp"
#include "noisyemo/indicators.hpp"
#include "noisyemo/posthoc.hpp"
#include "noisyemo/statistics.hpp"

namespace noisyemo {

using nlohmann::json;
namespace fs = std::filesystem;

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  std::size_t threads = workers > 0 ? static_cast<std::size_t>(workers) : std::thread::hardware_concurrency();
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      while (!failed) {
        const std::size_t i = next++;
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          failed = true;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

RunMetrics compute_metrics(const OptimizerConfig& cfg, const std::vector<DecisionVector>& genotypes,
                           const std::vector<ObjectiveVector>& perceived, double initial_hv, double cluster_tol) {
  RunMetrics m;
  m.initial_hv = initial_hv;
  const auto& ref = cfg.reference_point;
  m.perceived_hv = hypervolume(perceived, ref);
  const auto ideal = reevaluate_ideal(genotypes, cfg.landscape);
  m.ideal_hv = hypervolume(ideal.all, ref);
  m.ideal_clusters = cluster_count(ideal.all, cluster_tol);
  try {
    m.reference_hv = analytic_front_hypervolume(cfg.landscape);
    m.delta_v_perceived = delta_v(m.reference_hv, m.perceived_hv);
    m.delta_v_ideal = delta_v(m.reference_hv, m.ideal_hv);
    const auto reference = analytic_front(cfg.landscape, static_cast<int>(perceived.size()));
    const auto dp = delta_d(perceived, reference);
    const auto di = delta_d(ideal.all, reference);
    m.delta_d_perceived = dp.value;
    m.delta_d_ideal = di.value;
    m.delta_d_excluded = dp.excluded;
  } catch (const NotImplementedError&) {
    // no analytic front for this instance
  }
  return m;
}

std::vector<DecisionVector> StoredRun::genotypes() const {
  std::vector<DecisionVector> out;
  for (const auto& m : members) out.push_back(m.x);
  return out;
}

std::vector<ObjectiveVector> StoredRun::perceived() const {
  std::vector<ObjectiveVector> out;
  for (const auto& m : members) out.push_back(m.perceived);
  return out;
}

std::string run_id(std::size_t cell, std::size_t run) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "c%03zu-r%03zu", cell, run);
  return buf;
}

StoredRun store_run(const RunRecord& record, const CampaignCell& cell, std::size_t run) {
  StoredRun s;
  s.id = run_id(cell.index, run);
  s.cell = cell.index;
  s.run = run;
  s.label = cell.label;
  s.eps2 = cell.eps2;
  s.config = record.config;
  s.trace = record.trace;
  s.evaluations = record.evaluations;
  s.generations = record.generations;
  s.wall_clock_seconds = record.wall_clock_seconds;
  for (const auto& ind : record.archive.members) {
    StoredMember m;
    m.x = ind.x;
    m.perceived = ind.perceived;
    m.birth_gen = ind.birth_gen;
    m.eval_count = ind.eval_count;
    if (ind.kernel) {
      m.sigma = ind.kernel->sigma;
      m.success_rate = ind.kernel->success_rate;
    }
    s.members.push_back(std::move(m));
  }
  s.metrics = compute_metrics(s.config, s.genotypes(), s.perceived(), record.initial_hypervolume());
  return s;
}

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double number(const json& j) { return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>(); }

}  // namespace

json to_json(const StoredRun& run) {
  json j;
  j["id"] = run.id;
  j["cell"] = run.cell;
  j["run"] = run.run;
  j["label"] = run.label;
  j["eps2"] = run.eps2;
  j["config"] = optimizer_to_json(run.config);
  j["evaluations"] = run.evaluations;
  j["generations"] = run.generations;
  json trace = json::array();
  for (const auto& t : run.trace) trace.push_back({t.generation, t.evaluations, t.hypervolume});
  j["trace"] = trace;
  json members = json::array();
  for (const auto& m : run.members) {
    members.push_back({{"x", m.x},
                       {"f", m.perceived.values},
                       {"birth", m.birth_gen},
                       {"evals", m.eval_count},
                       {"sigma", number(m.sigma)},
                       {"psucc", number(m.success_rate)}});
  }
  j["members"] = members;
  const auto& mt = run.metrics;
  j["metrics"] = {{"initial_hv", mt.initial_hv},
                  {"perceived_hv", mt.perceived_hv},
                  {"ideal_hv", mt.ideal_hv},
                  {"reference_hv", number(mt.reference_hv)},
                  {"delta_v_perceived", number(mt.delta_v_perceived)},
                  {"delta_v_ideal", number(mt.delta_v_ideal)},
                  {"delta_d_perceived", number(mt.delta_d_perceived)},
                  {"delta_d_ideal", number(mt.delta_d_ideal)},
                  {"delta_d_excluded", mt.delta_d_excluded},
                  {"ideal_clusters", mt.ideal_clusters}};
  j["wall_clock_seconds"] = run.wall_clock_seconds;
  return j;
}

StoredRun stored_run_from_json(const json& j) {
  StoredRun s;
  s.id = j.at("id").get<std::string>();
  s.cell = j.at("cell").get<std::size_t>();
  s.run = j.at("run").get<std::size_t>();
  s.label = j.at("label").get<std::string>();
  s.eps2 = j.at("eps2").get<double>();
  s.config = optimizer_from_json(j.at("config"));
  s.evaluations = j.at("evaluations").get<long>();
  s.generations = j.at("generations").get<long>();
  for (const auto& t : j.at("trace")) s.trace.push_back({t[0].get<long>(), t[1].get<long>(), t[2].get<double>()});
  for (const auto& mj : j.at("members")) {
    StoredMember m;
    if (!mj.contains("x")) {
      throw std::runtime_error("run " + s.id + ": archive member without genotype (fronts alone are insufficient)");
    }
    m.x = mj.at("x").get<DecisionVector>();
    m.perceived = ObjectiveVector(mj.at("f").get<std::vector<double>>(), s.config.landscape.senses);
    m.birth_gen = mj.at("birth").get<long>();
    m.eval_count = mj.at("evals").get<int>();
    m.sigma = number(mj.at("sigma"));
    m.success_rate = number(mj.at("psucc"));
    s.members.push_back(std::move(m));
  }
  const auto& mt = j.at("metrics");
  s.metrics.initial_hv = mt.at("initial_hv").get<double>();
  s.metrics.perceived_hv = mt.at("perceived_hv").get<double>();
  s.metrics.ideal_hv = mt.at("ideal_hv").get<double>();
  s.metrics.reference_hv = number(mt.at("reference_hv"));
  s.metrics.delta_v_perceived = number(mt.at("delta_v_perceived"));
  s.metrics.delta_v_ideal = number(mt.at("delta_v_ideal"));
  s.metrics.delta_d_perceived = number(mt.at("delta_d_perceived"));
  s.metrics.delta_d_ideal = number(mt.at("delta_d_ideal"));
  s.metrics.delta_d_excluded = mt.at("delta_d_excluded").get<std::size_t>();
  s.metrics.ideal_clusters = mt.at("ideal_clusters").get<int>();
  s.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
  return s;
}

namespace {

json read_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return json::parse(in);
}

}  // namespace

std::vector<StoredRun> load_runs(const fs::path& dir) {
  const fs::path runs_dir = dir / "runs";
  if (!fs::is_directory(runs_dir)) {
    throw std::runtime_error(runs_dir.string() + " not found: archive genotypes are required (fronts alone are insufficient)");
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(runs_dir)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::runtime_error("no run files in " + runs_dir.string());
  std::vector<StoredRun> out;
  for (const auto& f : files) {
    try {
      out.push_back(stored_run_from_json(read_json(f)));
    } catch (const json::exception& e) {
      throw std::runtime_error("corrupt run file " + f.string() + ": " + e.what());
    }
  }
  return out;
}

std::vector<std::string> fronts_header(std::size_t m, std::size_t n) {
  std::vector<std::string> h{"run_id", "generation", "kind", "member_index"};
  for (std::size_t i = 1; i <= m; ++i) h.push_back("f" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) h.push_back("x" + std::to_string(i));
  return h;
}

namespace {

std::string fmt(double v) { return std::isfinite(v) ? format_double(v) : std::string(); }

std::vector<std::string> front_row(const std::string& id, const std::string& generation, FrontKind kind,
                                   std::size_t index, const ObjectiveVector& f, std::size_t m,
                                   const DecisionVector* x, std::size_t n) {
  std::vector<std::string> row{id, generation, to_string(kind), std::to_string(index)};
  for (std::size_t i = 0; i < m; ++i) row.push_back(i < f.size() ? format_double(f[i]) : "");
  for (std::size_t i = 0; i < n; ++i) row.push_back(x && i < x->size() ? format_double((*x)[i]) : "");
  return row;
}

json box_json(const std::vector<double>& values) {
  std::vector<double> finite;
  for (double v : values) {
    if (std::isfinite(v)) finite.push_back(v);
  }
  if (finite.empty()) return nullptr;
  const auto b = box_stats(finite);
  return {{"mean", b.mean}, {"std", b.stddev}, {"min", b.min}, {"q1", b.q1},
          {"median", b.median}, {"q3", b.q3}, {"max", b.max}, {"count", b.count}};
}

}  // namespace

void write_campaign_outputs(const fs::path& dir, const std::vector<StoredRun>& runs, const std::string& name,
                            bool genotypes) {
  std::size_t max_m = 0, max_n = 0;
  for (const auto& r : runs) {
    max_m = std::max<std::size_t>(max_m, static_cast<std::size_t>(r.config.landscape.m));
    max_n = std::max<std::size_t>(max_n, static_cast<std::size_t>(r.config.landscape.n));
  }
  const std::size_t xn = genotypes ? max_n : 0;

  std::ostringstream runs_csv;
  write_csv_row(runs_csv, {"run_id", "cell", "run", "label", "problem", "n", "m", "eps2", "algorithm", "scheme",
                           "mu", "seed", "generations", "evaluations", "initial_hv", "perceived_hv", "ideal_hv",
                           "reference_hv", "delta_v_perceived", "delta_v_ideal", "delta_d_perceived",
                           "delta_d_ideal", "delta_d_excluded", "ideal_clusters"});
  std::ostringstream fronts_csv;
  write_csv_row(fronts_csv, fronts_header(max_m, xn));
  std::ostringstream traces_csv;
  write_csv_row(traces_csv, {"run_id", "generation", "evaluations", "perceived_hv"});
  std::ostringstream timing_csv;
  write_csv_row(timing_csv, {"run_id", "wall_clock_seconds"});

  std::map<std::size_t, std::vector<const StoredRun*>> by_cell;
  for (const auto& r : runs) by_cell[r.cell].push_back(&r);

  for (const auto& [cell, members] : by_cell) {
    for (const auto* rp : members) {
      const auto& r = *rp;
      const auto& cfg = r.config;
      const auto& mt = r.metrics;
      write_csv_row(runs_csv,
                    {r.id, std::to_string(r.cell), std::to_string(r.run), r.label, to_string(cfg.landscape.family),
                     std::to_string(cfg.landscape.n), std::to_string(cfg.landscape.m), format_double(r.eps2),
                     to_string(cfg.algorithm), cfg.algorithm == Algorithm::mo_cma ? to_string(cfg.scheme) : "",
                     std::to_string(cfg.mu), std::to_string(cfg.seed), std::to_string(r.generations),
                     std::to_string(r.evaluations), fmt(mt.initial_hv), fmt(mt.perceived_hv), fmt(mt.ideal_hv),
                     fmt(mt.reference_hv), fmt(mt.delta_v_perceived), fmt(mt.delta_v_ideal),
                     fmt(mt.delta_d_perceived), fmt(mt.delta_d_ideal), std::to_string(mt.delta_d_excluded),
                     std::to_string(mt.ideal_clusters)});
      for (std::size_t i = 0; i < r.members.size(); ++i) {
        write_csv_row(fronts_csv, front_row(r.id, std::to_string(r.generations), FrontKind::perceived, i,
                                            r.members[i].perceived, max_m, &r.members[i].x, xn));
      }
      for (const auto& t : r.trace) {
        write_csv_row(traces_csv, {r.id, std::to_string(t.generation), std::to_string(t.evaluations),
                                   format_double(t.hypervolume)});
      }
      write_csv_row(timing_csv, {r.id, format_double(r.wall_clock_seconds)});
    }
    const auto& cfg = members.front()->config;
    try {
      const auto front = analytic_front(cfg.landscape, cfg.mu);
      char id[32];
      std::snprintf(id, sizeof(id), "analytic-c%03zu", cell);
      for (std::size_t i = 0; i < front.size(); ++i) {
        write_csv_row(fronts_csv, front_row(id, "", FrontKind::analytic, i, front[i], max_m, nullptr, xn));
      }
    } catch (const NotImplementedError&) {
    }
  }

  json summary;
  summary["campaign"] = name;
  summary["runs"] = runs.size();
  json cells = json::array();
  for (const auto& [cell, members] : by_cell) {
    const auto& first = *members.front();
    const auto& cfg = first.config;
    std::vector<double> phv, ihv, dvp, dvi, ddp, ddi, clusters;
    for (const auto* r : members) {
      phv.push_back(r->metrics.perceived_hv);
      ihv.push_back(r->metrics.ideal_hv);
      dvp.push_back(r->metrics.delta_v_perceived);
      dvi.push_back(r->metrics.delta_v_ideal);
      ddp.push_back(r->metrics.delta_d_perceived);
      ddi.push_back(r->metrics.delta_d_ideal);
      clusters.push_back(r->metrics.ideal_clusters);
    }
    cells.push_back({{"cell", cell},
                     {"label", first.label},
                     {"problem", landscape_to_json(cfg.landscape)},
                     {"eps2", first.eps2},
                     {"algorithm", to_string(cfg.algorithm)},
                     {"scheme", cfg.algorithm == Algorithm::mo_cma ? json(to_string(cfg.scheme)) : json(nullptr)},
                     {"runs", members.size()},
                     {"reference_hv", number(first.metrics.reference_hv)},
                     {"perceived_hv", box_json(phv)},
                     {"ideal_hv", box_json(ihv)},
                     {"delta_v_perceived", box_json(dvp)},
                     {"delta_v_ideal", box_json(dvi)},
                     {"delta_d_perceived", box_json(ddp)},
                     {"delta_d_ideal", box_json(ddi)},
                     {"ideal_clusters", box_json(clusters)}});
  }
  summary["cells"] = cells;

  write_file_atomic(dir / "runs.csv", runs_csv.str());
  write_file_atomic(dir / "fronts.csv", fronts_csv.str());
  write_file_atomic(dir / "traces.csv", traces_csv.str());
  write_file_atomic(dir / "timing.csv", timing_csv.str());
  write_file_atomic(dir / "summary.json", summary.dump(2) + "\n");
}

CampaignResult run_campaign(const CampaignConfig& config, const CampaignOptions& options) {
  CampaignResult result;
  result.out = !options.out.empty() ? options.out : (!config.output.empty() ? config.output : fs::path("noisyemo-out"));
  const fs::path runs_dir = result.out / "runs";
  fs::create_directories(runs_dir);
  const std::uint64_t base_seed = options.seed.value_or(config.base_seed);

  struct Job {
    const CampaignCell* cell;
    std::size_t run;
    OptimizerConfig cfg;
    fs::path file;
  };
  std::vector<Job> jobs;
  json campaign_cells = json::array();
  for (const auto& cell : config.cells) {
    for (int r = 0; r < cell.runs; ++r) {
      Job job{&cell, static_cast<std::size_t>(r), cell.optimizer, {}};
      job.cfg.seed = run_seed(base_seed, cell.index, job.run);
      job.file = runs_dir / (run_id(cell.index, job.run) + ".json");
      jobs.push_back(std::move(job));
    }
    auto snapshot = optimizer_to_json(cell.optimizer);
    snapshot.erase("seed");
    campaign_cells.push_back({{"cell", cell.index}, {"label", cell.label}, {"runs", cell.runs}, {"config", snapshot}});
  }
  result.total = jobs.size();

  json campaign = {{"name", config.name}, {"base_seed", base_seed}, {"cells", campaign_cells}};
  write_file_atomic(result.out / "campaign.json", campaign.dump(2) + "\n");

  // Completed runs whose stored snapshot matches the current configuration are kept.
  std::vector<StoredRun> stored(jobs.size());
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    bool reuse = false;
    if (fs::exists(jobs[i].file)) {
      try {
        const auto j = read_json(jobs[i].file);
        if (j.at("config") == optimizer_to_json(jobs[i].cfg)) {
          stored[i] = stored_run_from_json(j);
          reuse = true;
        }
      } catch (const std::exception&) {
        reuse = false;
      }
    }
    if (reuse) {
      ++result.resumed;
    } else {
      pending.push_back(i);
    }
  }

  std::mutex log_mutex;
  std::set<std::string> completed;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (std::find(pending.begin(), pending.end(), i) == pending.end()) completed.insert(stored[i].id);
  }
  auto write_manifest = [&]() {
    json manifest = {{"campaign", config.name}, {"total", jobs.size()}, {"completed", completed}};
    write_file_atomic(result.out / "manifest.json", manifest.dump(2) + "\n");
  };
  write_manifest();

  std::atomic<std::size_t> done{0};
  parallel_for(pending.size(), options.workers, [&](std::size_t k) {
    const std::size_t i = pending[k];
    const auto& job = jobs[i];
    const auto record = run_optimizer(job.cfg);
    stored[i] = store_run(record, *job.cell, job.run);
    write_file_atomic(job.file, to_json(stored[i]).dump() + "\n");
    std::lock_guard lock(log_mutex);
    completed.insert(stored[i].id);
    write_manifest();
    const std::size_t finished = ++done;
    if (options.log) {
      *options.log << "[" << finished << "/" << pending.size() << "] " << stored[i].id << " " << stored[i].label
                   << " perceived_hv=" << format_double(stored[i].metrics.perceived_hv)
                   << " ideal_hv=" << format_double(stored[i].metrics.ideal_hv) << " ("
                   << record.wall_clock_seconds << " s)\n";
    }
  });
  result.executed = pending.size();

  write_campaign_outputs(result.out, stored, config.name, options.genotypes);
  return result;
}

}  // namespace noisyemo
