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

#include "polylife/envs/rollout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polylife/core/error.hpp"

namespace polylife::envs {

double RolloutStats::boundary_theta_dot() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : events)
    if (e.cause == Termination::Angle) best = std::min(best, e.theta_dot_abs);
  return angle_events > 0 ? best : 0.0;
}

double RolloutStats::mean_angle_episode_length() const {
  double sum = 0;
  for (const auto& e : events)
    if (e.cause == Termination::Angle) sum += e.episode_length;
  return angle_events > 0 ? sum / angle_events : 0.0;
}

RolloutStats random_policy_rollout(const TaskSpec& task, std::int64_t n_steps, Rng& rng) {
  if (task.domain() != Domain::Cartpole) throw UsageError("random_policy_rollout needs a cartpole task");
  RolloutStats stats;
  if (n_steps <= 0) return stats;
  CartpoleState s = cartpole_reset(task, rng);
  for (std::int64_t t = 0; t < n_steps; ++t) {
    const int action = uniform_index(rng, kCartpoleActions);
    const CartpoleStep r = cartpole_step(task, s, action);
    ++stats.steps;
    if (r.terminal) {
      switch (r.cause) {
        case Termination::Angle: ++stats.angle_events; break;
        case Termination::Position: ++stats.position_events; break;
        default: ++stats.time_limit_events; break;
      }
      if (r.cause == Termination::Angle || r.cause == Termination::Position)
        stats.events.push_back({r.cause, std::abs(s.theta_dot), r.state.steps});
      s = cartpole_reset(task, rng);
    } else {
      s = r.state;
    }
  }
  return stats;
}

}  // namespace polylife::envs
