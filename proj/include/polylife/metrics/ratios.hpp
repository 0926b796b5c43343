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
#include <string>
#include <vector>

#include "polylife/envs/task.hpp"
#include "polylife/reuse/lifetime.hpp"

namespace polylife::metrics {

/// Integrated performance of one task-block. `area` sums the episode returns;
/// ratios compare per-episode means, which stay comparable when blocks hold
/// different numbers of episodes.
struct BlockArea {
  int sequence_id = 0;
  int task_index = 0;
  int block_index = 0;
  double area = 0;
  int episodes = 0;
  int presentation = 0;  // earlier blocks of the same task in this sequence

  double mean() const { return area / episodes; }
};

/// Block areas in log order, one per (sequence, block).
std::vector<BlockArea> block_areas(const reuse::RunLog& log);

/// (delta - delta_one_to_one) / uniform_random_area, with delta the change of
/// the per-episode mean between the previous and current presentation.
double forgetting_ratio(const BlockArea& current, const BlockArea& previous, double one_to_one_delta,
                        double uniform_random_area);

/// (first-block mean - one-to-one first-block mean) / uniform_random_area.
/// Throws UsageError unless `first_block` is the task's first presentation.
double transfer_ratio(const BlockArea& first_block, double one_to_one_first_block_area, double uniform_random_area);

struct RatioBin {
  std::string label;
  int min_interfering = 0;
  int max_interfering = 0;  // inclusive; -1 means unbounded
  int count = 0;
  double mean = 0;
  double stderr_ = 0;
};

/// Interfering-block bins 0, 1-9, 10-19, 20-29, >=30.
std::vector<RatioBin> empty_forgetting_bins();
int forgetting_bin(int interfering_blocks);

/// Forgetting ratios of every repeated presentation in `condition`, paired
/// with the same sequence and blocks in `one_to_one`, binned by the number of
/// blocks between the two presentations. `uniform_area[task]` is the uniform
/// random policy's per-episode mean on the task.
std::vector<RatioBin> forgetting_by_interference(const reuse::RunLog& condition, const reuse::RunLog& one_to_one,
                                                 const std::vector<double>& uniform_area);

struct RatioSummary {
  int count = 0;
  double mean = 0;
  double stderr_ = 0;
};

/// Transfer ratios over all first presentations.
RatioSummary transfer_summary(const reuse::RunLog& condition, const reuse::RunLog& one_to_one,
                              const std::vector<double>& uniform_area);

/// Per-episode mean return of a uniform-random policy over one block of each
/// task.
std::vector<double> uniform_random_areas(const std::vector<envs::TaskSpec>& tasks, int block_length,
                                         reuse::TimeUnit unit, std::uint64_t seed);

RatioSummary summarise(const std::vector<double>& values);

}  // namespace polylife::metrics
