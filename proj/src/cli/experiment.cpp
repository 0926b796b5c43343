// Copyright 2026 The polylife Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "polylife/cli/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "polylife/cli/aggregate.hpp"
#include "polylife/cli/csv.hpp"
#include "polylife/core/error.hpp"
#include "polylife/metrics/spread.hpp"

namespace polylife::cli {

namespace fs = std::filesystem;
using nlohmann::json;

int worker_count(int n_sequences) {
  int cap = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("POLYLIFE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw ConfigError("POLYLIFE_THREADS must be a positive integer");
    cap = static_cast<int>(v);
  }
  return std::max(1, std::min(cap, n_sequences));
}

namespace {

void write_json(const fs::path& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << j.dump(2) << '\n';
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentConfig& cfg, std::ostream* progress) {
  cfg.validate();
  const fs::path out(cfg.out_dir);
  fs::create_directories(out);
  write_json(out / "config.json", to_json(cfg));

  const auto tasks = cfg.tasks();
  const auto sequences = cfg.sequences();
  const auto lc = cfg.lifetime();

  ExperimentSummary summary;
  summary.condition = cfg.condition();
  summary.sequences.resize(sequences.size());
  std::vector<std::exception_ptr> errors(sequences.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;

  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < sequences.size();) {
      const auto& seq = sequences[i];
      try {
        RunCsvWriter writer((out / sequence_file_name(seq.sequence_id)).string());
        const auto result = reuse::run_lifetime(tasks, seq, lc, [&](const reuse::EpisodeRecord& r) { writer.append(r); });
        writer.flush();
        const auto scores = block_scores(result.log).at(seq.sequence_id);
        auto& s = summary.sequences[i];
        s.sequence_id = seq.sequence_id;
        s.lifetime_average = lifetime_average(scores);
        s.final_average = final_average(scores, 10);
        s.total_steps = result.total_steps;
        s.episodes = static_cast<std::int64_t>(result.log.size());
        s.policy_spread = result.library.size() >= 2 && !result.spread_sample.empty()
                              ? metrics::policy_spread(result.library, result.spread_sample)
                              : std::numeric_limits<double>::quiet_NaN();
        if (progress) {
          std::lock_guard<std::mutex> lock(log_mutex);
          *progress << summary.condition << ": sequence " << seq.sequence_id << " lifetime " << s.lifetime_average
                    << " final " << s.final_average << '\n';
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const int n_workers = worker_count(static_cast<int>(sequences.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<double> life, fin;
  for (const auto& s : summary.sequences) {
    life.push_back(s.lifetime_average);
    fin.push_back(s.final_average);
  }
  summary.lifetime = metrics::summarise(life);
  summary.final = metrics::summarise(fin);
  write_json(out / "summary.json", to_json(summary));
  return summary;
}

json to_json(const ExperimentSummary& s) {
  json seqs = json::array();
  for (const auto& q : s.sequences) {
    json row = {{"sequence_id", q.sequence_id},
                {"lifetime_average", q.lifetime_average},
                {"final_average", q.final_average},
                {"total_steps", q.total_steps},
                {"episodes", q.episodes}};
    row["policy_spread"] = std::isnan(q.policy_spread) ? json(nullptr) : json(q.policy_spread);
    seqs.push_back(row);
  }
  return {{"condition", s.condition},
          {"lifetime_average", {{"mean", s.lifetime.mean}, {"stderr", s.lifetime.stderr_}, {"n", s.lifetime.count}}},
          {"final_average", {{"mean", s.final.mean}, {"stderr", s.final.stderr_}, {"n", s.final.count}}},
          {"sequences", seqs}};
}

namespace {

ExperimentConfig config_of(const std::string& dir) {
  const auto path = (fs::path(dir) / "config.json").string();
  std::ifstream f(path);
  if (!f) throw AnalysisError("no config.json in " + dir);
  try {
    return parse_experiment_config(json::parse(f));
  } catch (const ConfigError& e) {
    throw AnalysisError(path + ": " + e.what());
  } catch (const json::exception& e) {
    throw AnalysisError(path + ": " + e.what());
  }
}

}  // namespace

MetricsReport compute_metrics(const std::string& in_dir, const std::string& one_to_one_dir,
                              const std::string& baseline_dir) {
  const auto cfg = config_of(in_dir);
  const auto condition = read_run_dir(in_dir);
  const auto reference = read_run_dir(one_to_one_dir);

  MetricsReport rep;
  if (!baseline_dir.empty()) {
    std::vector<double> sum(cfg.n_tau(), 0.0);
    std::vector<int> count(cfg.n_tau(), 0);
    for (const auto& b : metrics::block_areas(read_run_dir(baseline_dir))) {
      if (b.task_index < 0 || b.task_index >= cfg.n_tau()) throw AnalysisError("baseline task index out of range");
      sum[b.task_index] += b.mean();
      ++count[b.task_index];
    }
    for (int t = 0; t < cfg.n_tau(); ++t) {
      if (!count[t]) throw AnalysisError("baseline run never visits task " + std::to_string(t));
      rep.uniform_area.push_back(sum[t] / count[t]);
    }
  } else {
    rep.uniform_area = metrics::uniform_random_areas(cfg.tasks(), cfg.block_length, cfg.unit, cfg.seed);
  }
  rep.forgetting = metrics::forgetting_by_interference(condition, reference, rep.uniform_area);
  rep.transfer = metrics::transfer_summary(condition, reference, rep.uniform_area);

  char buf[200];
  std::ofstream fo(fs::path(in_dir) / "forgetting.csv");
  fo << "bin,min_interfering,max_interfering,count,mean,stderr\n";
  for (const auto& b : rep.forgetting) {
    std::snprintf(buf, sizeof buf, "%s,%d,%d,%d,%.17g,%.17g\n", b.label.c_str(), b.min_interfering, b.max_interfering,
                  b.count, b.mean, b.stderr_);
    fo << buf;
  }
  std::ofstream ft(fs::path(in_dir) / "transfer.csv");
  ft << "count,mean,stderr\n";
  std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", rep.transfer.count, rep.transfer.mean, rep.transfer.stderr_);
  ft << buf;
  if (!fo || !ft) throw AnalysisError("cannot write metric CSVs into " + in_dir);
  return rep;
}

}  // namespace polylife::cli
