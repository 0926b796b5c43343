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
#include <vector>

namespace polylife::memsim {

struct MemSimConfig {
  int n_tau = 1000;
  double task_capacity = 5;
  int blocks_to_convergence = 4;
  double acceptance_probability = 0.5;
  int n_blocks = 10000;
  int runs = 50;
  std::uint64_t seed = 1;

  void validate() const;  // throws ConfigError
};

struct MemSimRow {
  int block_index = 0;
  double mean_library = 0;
  double mean_temporary = 0;
  double mean_total = 0;
  double stderr_total = 0;
  double baseline = 0;
};

/// Policy counts of a dynamic policy-generation scheme, averaged over runs.
///
/// One uniformly drawn task arrives per block. An unseen task opens a
/// temporary policy, which closes once its task has had T_c blocks; it then
/// joins the library with probability p, and otherwise the task is handed to
/// a library policy holding fewer than C tasks (or a temporary one) and never
/// reopens. Counts are taken at the end of each block. The baseline is the
/// fixed library size ceil(n_tau / C).
std::vector<MemSimRow> simulate_memory(const MemSimConfig& cfg);

/// CSV with header block_index,mean_library,mean_temporary,mean_total,baseline.
void write_memsim_csv(std::ostream& out, const std::vector<MemSimRow>& rows);

}  // namespace polylife::memsim
