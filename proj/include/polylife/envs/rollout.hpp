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

#include "polylife/core/random.hpp"
#include "polylife/envs/cartpole.hpp"

namespace polylife::envs {

struct TerminationEvent {
  Termination cause = Termination::None;
  double theta_dot_abs = 0;  // |theta_dot| of the last non-terminal state, rad/s
  int episode_length = 0;
};

struct RolloutStats {
  std::int64_t steps = 0;
  int angle_events = 0;
  int position_events = 0;
  int time_limit_events = 0;
  std::vector<TerminationEvent> events;  // angle and position terminations only

  /// Minimum |theta_dot| over angle terminations, 0 when there are none.
  double boundary_theta_dot() const;
  /// Mean episode length over angle terminations, 0 when there are none.
  double mean_angle_episode_length() const;
};

/// Runs a uniform-random policy on a cartpole task for `n_steps` steps,
/// resetting on every termination. A trailing unfinished episode is dropped.
RolloutStats random_policy_rollout(const TaskSpec& task, std::int64_t n_steps, Rng& rng);

}  // namespace polylife::envs
