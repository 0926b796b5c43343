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

#include "polylife/core/random.hpp"
#include "polylife/envs/maze.hpp"
#include "polylife/envs/task.hpp"

namespace polylife::envs {

struct PocmanState {
  Cell agent;
  Cell object;
  int steps = 0;
  bool done = false;
};

struct PocmanStep {
  PocmanState state;
  Observation obs;
  double reward = 0;
  bool terminal = false;
};

inline constexpr int kPocmanMaxSteps = 1000;
inline constexpr int kPocmanRandomPeriod = 20;

PocmanState pocman_reset(const TaskSpec& task, Rng& rng);

/// Agent moves first (blocked moves leave it in place), then the object
/// moves according to the task's movement code. The task reward is paid
/// whenever both share a cell afterwards. Actions: 0 N, 1 E, 2 S, 3 W, 4 stay.
PocmanStep pocman_step(const TaskSpec& task, const PocmanState& state, int action, Rng& rng);

/// Bits 0-3: wall N/E/S/W. Bits 4-7: object in the adjacent N/E/S/W cell.
/// Bits 8-10: object within Manhattan distance 2, 3, 4. Values are +1 / -1.
Observation pocman_observation(const Maze& maze, Cell agent, Cell object);

}  // namespace polylife::envs
