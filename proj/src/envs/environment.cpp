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

#include "polylife/envs/environment.hpp"

#include "polylife/core/error.hpp"

namespace polylife::envs {

int Environment::steps() const {
  if (const auto* c = std::get_if<CartpoleState>(&state_)) return c->steps;
  if (const auto* p = std::get_if<PocmanState>(&state_)) return p->steps;
  return 0;
}

Observation Environment::reset(Rng& rng) {
  done_ = false;
  if (task_.domain() == Domain::Cartpole) {
    const auto s = cartpole_reset(task_, rng);
    state_ = s;
    return cartpole_observation(s);
  }
  const auto s = pocman_reset(task_, rng);
  state_ = s;
  return pocman_observation(*task_.pocman().maze, s.agent, s.object);
}

StepResult Environment::step(int action, Rng& rng) {
  if (done_) throw UsageError("Environment::step called before reset or after the episode ended");
  StepResult out;
  if (auto* c = std::get_if<CartpoleState>(&state_)) {
    auto r = cartpole_step(task_, *c, action);
    *c = r.state;
    out = {std::move(r.obs), r.reward, r.terminal, r.cause == Termination::TimeLimit};
  } else {
    auto& p = std::get<PocmanState>(state_);
    auto r = pocman_step(task_, p, action, rng);
    p = r.state;
    out = {std::move(r.obs), r.reward, r.terminal, r.terminal};
  }
  done_ = out.terminal;
  return out;
}

}  // namespace polylife::envs
