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

#include "polylife/metrics/ratios.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "polylife/core/error.hpp"

namespace polylife::metrics {

std::vector<BlockArea> block_areas(const reuse::RunLog& log) {
  std::vector<BlockArea> out;
  std::map<std::pair<int, int>, int> seen;  // (sequence, task) -> presentations
  for (const auto& r : log.records()) {
    if (out.empty() || out.back().sequence_id != r.sequence_id || out.back().block_index != r.block_index) {
      BlockArea b;
      b.sequence_id = r.sequence_id;
      b.task_index = r.task_index;
      b.block_index = r.block_index;
      b.presentation = seen[{r.sequence_id, r.task_index}]++;
      out.push_back(b);
    }
    out.back().area += r.episode_return;
    ++out.back().episodes;
  }
  return out;
}

double forgetting_ratio(const BlockArea& current, const BlockArea& previous, double one_to_one_delta,
                        double uniform_random_area) {
  if (!(uniform_random_area > 0)) throw AnalysisError("forgetting ratio needs a positive uniform-random area");
  if (current.sequence_id != previous.sequence_id || current.task_index != previous.task_index ||
      current.presentation != previous.presentation + 1)
    throw UsageError("forgetting ratio needs consecutive presentations of one task in one sequence");
  const double delta = current.mean() - previous.mean();
  return (delta - one_to_one_delta) / uniform_random_area;
}

double transfer_ratio(const BlockArea& first_block, double one_to_one_first_block_area, double uniform_random_area) {
  if (first_block.presentation != 0) throw UsageError("transfer ratio applies only to a task's first presentation");
  if (!(uniform_random_area > 0)) throw AnalysisError("transfer ratio needs a positive uniform-random area");
  return (first_block.mean() - one_to_one_first_block_area) / uniform_random_area;
}

std::vector<RatioBin> empty_forgetting_bins() {
  return {{"0", 0, 0}, {"1-9", 1, 9}, {"10-19", 10, 19}, {"20-29", 20, 29}, {">=30", 30, -1}};
}

int forgetting_bin(int interfering_blocks) {
  if (interfering_blocks < 0) throw UsageError("negative interfering block count");
  if (interfering_blocks == 0) return 0;
  if (interfering_blocks >= 30) return 4;
  return 1 + interfering_blocks / 10;
}

RatioSummary summarise(const std::vector<double>& values) {
  RatioSummary s;
  s.count = static_cast<int>(values.size());
  if (values.empty()) return s;
  double sum = 0;
  for (double v : values) sum += v;
  s.mean = sum / s.count;
  if (s.count > 1) {
    double ss = 0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stderr_ = std::sqrt(ss / (s.count - 1) / s.count);
  }
  return s;
}

namespace {

using BlockIndex = std::map<std::pair<int, int>, BlockArea>;  // (sequence, block)

BlockIndex index_blocks(const reuse::RunLog& log) {
  BlockIndex idx;
  for (const auto& b : block_areas(log)) idx[{b.sequence_id, b.block_index}] = b;
  return idx;
}

const BlockArea& paired(const BlockIndex& ref, const BlockArea& b) {
  const auto it = ref.find({b.sequence_id, b.block_index});
  if (it == ref.end() || it->second.task_index != b.task_index)
    throw AnalysisError("no paired one-to-one block for sequence " + std::to_string(b.sequence_id) + ", block " +
                        std::to_string(b.block_index));
  return it->second;
}

double uniform_for(const std::vector<double>& uniform_area, int task) {
  if (task < 0 || task >= static_cast<int>(uniform_area.size()))
    throw AnalysisError("no uniform-random area for task " + std::to_string(task));
  return uniform_area[task];
}

}  // namespace

std::vector<RatioBin> forgetting_by_interference(const reuse::RunLog& condition, const reuse::RunLog& one_to_one,
                                                 const std::vector<double>& uniform_area) {
  const BlockIndex ref = index_blocks(one_to_one);
  std::vector<std::vector<double>> values(5);
  std::map<std::pair<int, int>, BlockArea> last;  // (sequence, task) -> previous presentation
  for (const auto& b : block_areas(condition)) {
    const auto key = std::make_pair(b.sequence_id, b.task_index);
    const auto it = last.find(key);
    if (it != last.end()) {
      const BlockArea& prev = it->second;
      const double ref_delta = paired(ref, b).mean() - paired(ref, prev).mean();
      const double r = forgetting_ratio(b, prev, ref_delta, uniform_for(uniform_area, b.task_index));
      values[forgetting_bin(b.block_index - prev.block_index - 1)].push_back(r);
    }
    last[key] = b;
  }
  auto bins = empty_forgetting_bins();
  for (std::size_t i = 0; i < bins.size(); ++i) {
    const auto s = summarise(values[i]);
    bins[i].count = s.count;
    bins[i].mean = s.mean;
    bins[i].stderr_ = s.stderr_;
  }
  return bins;
}

RatioSummary transfer_summary(const reuse::RunLog& condition, const reuse::RunLog& one_to_one,
                              const std::vector<double>& uniform_area) {
  const BlockIndex ref = index_blocks(one_to_one);
  std::vector<double> values;
  for (const auto& b : block_areas(condition)) {
    if (b.presentation != 0) continue;
    values.push_back(transfer_ratio(b, paired(ref, b).mean(), uniform_for(uniform_area, b.task_index)));
  }
  return summarise(values);
}

std::vector<double> uniform_random_areas(const std::vector<envs::TaskSpec>& tasks, int block_length,
                                         reuse::TimeUnit unit, std::uint64_t seed) {
  const auto cfg = learners::default_learner_config(learners::LearnerKind::UniformRandom, tasks.front().domain());
  std::vector<double> out;
  for (const auto& t : tasks) {
    const envs::TaskSequence one{t.task_index, seed, {{t.task_index, block_length}}};
    const auto log = reuse::run_single_learner(tasks, one, cfg, unit, seed);
    out.push_back(block_areas(log).front().mean());
  }
  return out;
}

}  // namespace polylife::metrics
