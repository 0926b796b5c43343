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
#include "polylife/envs/task.hpp"

namespace polylife::envs {

enum class Termination { None, Angle, Position, TimeLimit };

struct CartpoleState {
  double x = 0;          // m
  double theta = 0;      // rad
  double x_dot = 0;      // m/s
  double theta_dot = 0;  // rad/s
  int steps = 0;
  bool done = false;
};

struct CartpoleStep {
  CartpoleState state;
  Observation obs;
  double reward = 0;
  bool terminal = false;
  Termination cause = Termination::None;
};

inline constexpr double kCartpoleDt = 0.02;
inline constexpr double kCartpoleGravity = 9.8;
inline constexpr double kCartpoleForce = 1.0;
inline constexpr double kCartpoleAngleLimit = 15.0 * 3.14159265358979323846 / 180.0;
inline constexpr double kCartpolePositionLimit = 2.4;
inline constexpr int kCartpoleMaxSteps = 200;

/// Each of x, theta, x_dot, theta_dot uniform in [-0.05, 0.05].
CartpoleState cartpole_reset(const TaskSpec& task, Rng& rng);

/// One Euler step of the frictionless cart-pole. action 0 pushes left
/// (-1 N), action 1 pushes right (+1 N). Reward is +1 on every step.
/// Throws UsageError when `state` is already terminal.
CartpoleStep cartpole_step(const TaskSpec& task, const CartpoleState& state, int action);

Observation cartpole_observation(const CartpoleState& s);

}  // namespace polylife::envs
