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

#include <variant>

#include "polylife/core/random.hpp"
#include "polylife/envs/cartpole.hpp"
#include "polylife/envs/pocman.hpp"
#include "polylife/envs/task.hpp"

namespace polylife::envs {

struct StepResult {
  Observation obs;
  double reward = 0;
  bool terminal = false;    // episode over
  bool time_limit = false;  // ended by the step limit rather than a true terminal state
};

/// Uniform episodic view over both task families. Owns its own state and
/// draws all environment randomness from the rng it is handed.
class Environment {
 public:
  explicit Environment(TaskSpec task) : task_(std::move(task)) {}

  const TaskSpec& task() const { return task_; }
  int action_count() const { return envs::action_count(task_.domain()); }
  int observation_dim() const { return envs::observation_dim(task_.domain()); }
  int steps() const;
  bool done() const { return done_; }

  Observation reset(Rng& rng);
  StepResult step(int action, Rng& rng);

 private:
  TaskSpec task_;
  std::variant<std::monostate, CartpoleState, PocmanState> state_;
  bool done_ = true;
};

}  // namespace polylife::envs
