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

#include "polylife/envs/sequence.hpp"

#include <string>

#include "polylife/core/error.hpp"
#include "polylife/core/random.hpp"

namespace polylife::envs {

std::vector<TaskSequence> make_task_sequences(int n_tau, int n_sequences, int n_blocks, std::uint64_t seed,
                                              int block_length) {
  if (n_tau <= 0 || n_blocks < 0 || block_length <= 0)
    throw ConfigError("task sequences need n_tau > 0, n_blocks >= 0 and block_length > 0");
  if (n_sequences < 0 || n_sequences > n_tau)
    throw ConfigError("n_sequences must be in [0, n_tau], got " + std::to_string(n_sequences));
  Rng rng = make_rng(seed, {stream::kSequence});
  std::vector<int> base(static_cast<std::size_t>(n_blocks));
  for (int& t : base) t = uniform_index(rng, n_tau);
  std::vector<TaskSequence> out;
  for (int n = 0; n < n_sequences; ++n) {
    TaskSequence s{n, derive_seed(seed, {stream::kSequence, static_cast<std::uint64_t>(n)}), {}};
    s.blocks.reserve(base.size());
    for (int i : base) s.blocks.push_back({(i + n) % n_tau, block_length});
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace polylife::envs
