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

// polylife command-line front end.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "polylife/cli/aggregate.hpp"
#include "polylife/cli/config.hpp"
#include "polylife/cli/csv.hpp"
#include "polylife/cli/experiment.hpp"
#include "polylife/core/error.hpp"
#include "polylife/memsim/memsim.hpp"
#include "polylife/metrics/capacity.hpp"
#include "polylife/metrics/cluster.hpp"

using namespace polylife;

namespace {

// Writes to `path`, or stdout when it is empty.
template <class Fn>
void emit(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path);
  fn(f);
}

int cmd_run(const std::string& config, std::optional<std::uint64_t> seed, const std::string& out) {
  auto cfg = cli::load_experiment_config(config);
  if (seed) cfg.seed = *seed;
  if (!out.empty()) cfg.out_dir = out;
  const auto s = cli::run_experiment(cfg, &std::cerr);
  std::printf("%s: lifetime %.4f +- %.4f, final %.4f +- %.4f over %d sequences -> %s\n", s.condition.c_str(),
              s.lifetime.mean, s.lifetime.stderr_, s.final.mean, s.final.stderr_, s.lifetime.count,
              cfg.out_dir.c_str());
  return 0;
}

int cmd_aggregate(const std::string& in, int window, const std::string& out) {
  const auto rows = cli::aggregate_curve(cli::read_run_dir(in), window);
  emit(out, [&](std::ostream& o) { cli::write_curve_csv(o, rows); });
  return 0;
}

int cmd_metrics(const std::string& in, const std::string& one_to_one, const std::string& baseline) {
  const auto rep = cli::compute_metrics(in, one_to_one, baseline);
  std::printf("forgetting ratio by interfering blocks\n");
  for (const auto& b : rep.forgetting)
    std::printf("  %-6s n=%-5d mean=%+.4f stderr=%.4f\n", b.label.c_str(), b.count, b.mean, b.stderr_);
  std::printf("transfer ratio n=%d mean=%+.4f stderr=%.4f\n", rep.transfer.count, rep.transfer.mean,
              rep.transfer.stderr_);
  return 0;
}

int cmd_capacity(const std::string& table, int n_tau, double eps) {
  const auto t = metrics::load_capacity_table(table, n_tau);
  const auto c = metrics::empirical_task_capacity(t, n_tau, eps);
  std::printf("n_pi_star=%d\nC_emp=%.6g\nITC=%.6g\n", c.n_pi_star, c.capacity,
              metrics::integrated_task_capacity(t, n_tau));
  return 0;
}

int cmd_memsim(const memsim::MemSimConfig& cfg, const std::string& out) {
  const auto rows = memsim::simulate_memory(cfg);
  emit(out, [&](std::ostream& o) { memsim::write_memsim_csv(o, rows); });
  double peak = 0;
  for (const auto& r : rows) peak = std::max(peak, r.mean_total);
  std::fprintf(stderr, "peak mean total %.2f, baseline %.0f, ratio %.3f\n", peak, rows.front().baseline,
               peak / rows.front().baseline);
  return 0;
}

int cmd_cluster(const std::string& domain, std::int64_t steps, double threshold, std::uint64_t seed,
                const std::string& scale, const std::string& out) {
  const auto d = cli::parse_domain_name(domain);
  if (cli::domain_family(d) != envs::Domain::Cartpole) throw ConfigError("cluster analysis needs a cartpole domain");
  if (scale != "log" && scale != "linear") throw ConfigError("--scale must be log or linear");
  const auto tasks = cli::make_domain(d);
  const auto points = metrics::cluster_points(tasks, steps, seed);
  const auto clusters = metrics::cluster_tasks(
      points, threshold, scale == "log" ? metrics::BoundaryScale::Log : metrics::BoundaryScale::Linear);
  std::vector<int> label(tasks.size());
  for (std::size_t c = 0; c < clusters.size(); ++c)
    for (int t : clusters[c].task_indices) label[t] = static_cast<int>(c);
  emit(out, [&](std::ostream& o) {
    o << "task_index,boundary_theta_dot,mean_episode_length,cluster\n";
    char buf[128];
    for (const auto& p : points) {
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%d\n", p.task_index, p.boundary_theta_dot, p.mean_episode_length,
                    label[p.task_index]);
      o << buf;
    }
  });
  for (std::size_t c = 0; c < clusters.size(); ++c)
    std::fprintf(stderr, "cluster %zu: %zu tasks, mean boundary %.4f rad/s, mean length %.2f\n", c,
                 clusters[c].task_indices.size(), clusters[c].mean_boundary_theta_dot,
                 clusters[c].mean_episode_length);
  std::fprintf(stderr, "clusters=%zu capacity=%.4f\n", clusters.size(),
               metrics::theoretical_capacity(static_cast<int>(tasks.size()), clusters.size()));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lifetime policy reuse experiments and analysis"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
  std::string config, run_out;
  std::optional<std::uint64_t> seed;
  run->add_option("--config", config, "experiment config")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--out", run_out, "override the output directory");

  auto* agg = app.add_subcommand("aggregate", "learning curve across sequences");
  std::string agg_in, agg_out;
  int window = 25;
  agg->add_option("--in", agg_in, "run directory")->required();
  agg->add_option("--window", window, "blocks per window")->check(CLI::PositiveNumber);
  agg->add_option("--out", agg_out, "output CSV (default stdout)");

  auto* met = app.add_subcommand("metrics", "forgetting and transfer ratios");
  std::string met_in, met_121, met_base;
  met->add_option("--in", met_in, "run directory")->required();
  met->add_option("--one-to-one", met_121, "1-to-1 run directory with the same sequences")->required();
  met->add_option("--baseline", met_base, "uniform-random run directory");

  auto* cap = app.add_subcommand("capacity", "empirical and integrated task capacity");
  std::string table;
  int n_tau = 27;
  double eps = 0.05;
  cap->add_option("--table", table, "CSV n_policies,lifetime_average")->required();
  cap->add_option("--ntau", n_tau, "number of tasks")->required()->check(CLI::PositiveNumber);
  cap->add_option("--eps", eps, "tolerance")->check(CLI::Range(0.0, 1.0));

  auto* mem = app.add_subcommand("memsim", "memory use of dynamic policy generation");
  memsim::MemSimConfig mc;
  std::string mem_out;
  mem->add_option("--ntau", mc.n_tau, "number of tasks");
  mem->add_option("--capacity", mc.task_capacity, "task capacity C")->required();
  mem->add_option("--tc", mc.blocks_to_convergence, "blocks to convergence")->required();
  mem->add_option("--accept", mc.acceptance_probability, "acceptance probability")->required();
  mem->add_option("--blocks", mc.n_blocks, "blocks per run");
  mem->add_option("--runs", mc.runs, "independent runs");
  mem->add_option("--seed", mc.seed, "seed");
  mem->add_option("--out", mem_out, "output CSV (default stdout)");

  auto* clu = app.add_subcommand("cluster", "pre-termination cluster analysis");
  std::string domain = "cartpole27", scale = "log", clu_out;
  std::int64_t steps = 600000;
  double threshold = 0.1;
  std::uint64_t clu_seed = 123;
  clu->add_option("--domain", domain, "cartpole27 or cartpole125");
  clu->add_option("--steps", steps, "random-policy steps per task")->check(CLI::PositiveNumber);
  clu->add_option("--threshold", threshold, "single-linkage threshold on scaled axes");
  clu->add_option("--seed", clu_seed, "seed");
  clu->add_option("--scale", scale, "boundary axis scaling: log or linear");
  clu->add_option("--out", clu_out, "points CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run(config, seed, run_out);
    if (agg->parsed()) return cmd_aggregate(agg_in, window, agg_out);
    if (met->parsed()) return cmd_metrics(met_in, met_121, met_base);
    if (cap->parsed()) return cmd_capacity(table, n_tau, eps);
    if (mem->parsed()) return cmd_memsim(mc, mem_out);
    if (clu->parsed()) return cmd_cluster(domain, steps, threshold, clu_seed, scale, clu_out);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
