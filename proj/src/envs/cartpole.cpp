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

#include "polylife/envs/cartpole.hpp"

#include <cmath>

#include "polylife/core/error.hpp"

namespace polylife::envs {

Observation cartpole_observation(const CartpoleState& s) {
  Observation o(kCartpoleObsDim);
  o << s.x, s.theta, s.x_dot, s.theta_dot;
  return o;
}

CartpoleState cartpole_reset(const TaskSpec& task, Rng& rng) {
  if (task.domain() != Domain::Cartpole) throw UsageError("cartpole_reset on a non-cartpole task");
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  CartpoleState s;
  s.x = u(rng);
  s.theta = u(rng);
  s.x_dot = u(rng);
  s.theta_dot = u(rng);
  return s;
}

CartpoleStep cartpole_step(const TaskSpec& task, const CartpoleState& state, int action) {
  if (state.done) throw UsageError("cartpole_step on a terminal state");
  if (action != 0 && action != 1) throw UsageError("cartpole action must be 0 (left) or 1 (right)");
  const auto& p = task.cartpole();
  const double force = action == 1 ? kCartpoleForce : -kCartpoleForce;
  const double total_mass = p.cart_mass + p.pole_mass;
  const double half_length = 0.5 * p.pole_length;
  const double pole_moment = p.pole_mass * half_length;
  const double cos_t = std::cos(state.theta), sin_t = std::sin(state.theta);

  const double temp = (force + pole_moment * state.theta_dot * state.theta_dot * sin_t) / total_mass;
  const double theta_acc =
      (kCartpoleGravity * sin_t - cos_t * temp) /
      (half_length * (4.0 / 3.0 - p.pole_mass * cos_t * cos_t / total_mass));
  const double x_acc = temp - pole_moment * theta_acc * cos_t / total_mass;

  CartpoleStep out;
  auto& s = out.state;
  s.x = state.x + kCartpoleDt * state.x_dot;
  s.x_dot = state.x_dot + kCartpoleDt * x_acc;
  s.theta = state.theta + kCartpoleDt * state.theta_dot;
  s.theta_dot = state.theta_dot + kCartpoleDt * theta_acc;
  s.steps = state.steps + 1;

  if (std::abs(s.theta) > kCartpoleAngleLimit)
    out.cause = Termination::Angle;
  else if (std::abs(s.x) > kCartpolePositionLimit)
    out.cause = Termination::Position;
  else if (s.steps >= kCartpoleMaxSteps)
    out.cause = Termination::TimeLimit;
  out.terminal = out.cause != Termination::None;
  s.done = out.terminal;
  out.reward = 1.0;
  out.obs = cartpole_observation(s);
  return out;
}

}  // namespace polylife::envs
