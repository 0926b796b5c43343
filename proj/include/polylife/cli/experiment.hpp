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

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "polylife/cli/config.hpp"
#include "polylife/metrics/ratios.hpp"

namespace polylife::cli {

struct SequenceSummary {
  int sequence_id = 0;
  double lifetime_average = 0;
  double final_average = 0;
  std::int64_t total_steps = 0;
  std::int64_t episodes = 0;
  double policy_spread = 0;  // NaN with a single policy
};

struct ExperimentSummary {
  std::string condition;
  std::vector<SequenceSummary> sequences;  // by sequence id
  metrics::RatioSummary lifetime;
  metrics::RatioSummary final;
};

/// Worker count: one per sequence, capped by POLYLIFE_THREADS (default:
/// hardware concurrency).
int worker_count(int n_sequences);

/// Runs every sequence, writing `seq_NNN.csv`, `config.json` and
/// `summary.json` under cfg.out_dir. Rows are streamed as episodes finish, so
/// a failing run leaves partial logs behind; the first failure is rethrown
/// after all workers stop.
ExperimentSummary run_experiment(const ExperimentConfig& cfg, std::ostream* progress = nullptr);

nlohmann::json to_json(const ExperimentSummary& s);

struct MetricsReport {
  std::vector<metrics::RatioBin> forgetting;
  metrics::RatioSummary transfer;
  std::vector<double> uniform_area;
};

/// Forgetting and transfer of the run in `in_dir` against the 1-to-1 run in
/// `one_to_one_dir`. Uniform-random areas come from `baseline_dir` when given
/// (per-task mean block score), else from fresh uniform-random blocks.
/// Writes forgetting.csv and transfer.csv into `in_dir`.
MetricsReport compute_metrics(const std::string& in_dir, const std::string& one_to_one_dir,
                              const std::string& baseline_dir);

}  // namespace polylife::cli
