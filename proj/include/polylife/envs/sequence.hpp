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
#include <vector>

namespace polylife::envs {

struct TaskBlock {
  int task_index = 0;
  int length = 0;  // steps or episodes, depending on the domain
};

struct TaskSequence {
  int sequence_id = 0;
  std::uint64_t seed = 0;
  std::vector<TaskBlock> blocks;
};

/// Sequence 0 draws each block's task uniformly; sequence n shifts it to
/// (task + n) mod n_tau, so every block index covers n_tau distinct tasks
/// once n_sequences == n_tau.
std::vector<TaskSequence> make_task_sequences(int n_tau, int n_sequences, int n_blocks, std::uint64_t seed,
                                              int block_length = 1);

}  // namespace polylife::envs
