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

#include <Eigen/Core>

#include <cstdint>
#include <memory>
#include <string>

#include "polylife/core/random.hpp"
#include "polylife/envs/task.hpp"

namespace polylife::learners {

using envs::Observation;

/// One base-learner owning its parameters, experience and exploration RNG.
///
/// Call order per episode: begin_episode, then act / observe pairs until
/// observe reports the end of the episode. Recurrent learners spend the first
/// `burn_in` steps of every episode on uniform-random actions that only warm
/// the recurrent state.
class Learner {
 public:
  virtual ~Learner() = default;

  virtual std::string name() const = 0;
  virtual bool recurrent() const { return false; }
  virtual void begin_episode(int task_index) = 0;
  virtual int act(const Observation& obs) = 0;
  /// Outcome of the last action. `terminal` ends the episode; `time_limit`
  /// marks an ending that is a truncation rather than a true terminal state.
  virtual void observe(double reward, const Observation& next_obs, bool terminal, bool time_limit) = 0;

  /// Action probabilities the learner would use on `obs` from a fresh
  /// episode state (zero recurrent state, no burn-in).
  virtual Eigen::VectorXd action_distribution(const Observation& obs) const = 0;

  /// Environment steps this learner has acted on.
  virtual std::int64_t steps() const = 0;
  /// Parameter updates applied so far.
  virtual std::int64_t updates() const = 0;
};

using LearnerPtr = std::unique_ptr<Learner>;

/// Action index with the largest value, ties broken uniformly.
int argmax_random_tie(const Eigen::VectorXd& values, Rng& rng);

}  // namespace polylife::learners
