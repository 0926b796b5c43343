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
#include <string>

#include "polylife/envs/environment.hpp"
#include "polylife/learners/dqn.hpp"
#include "polylife/learners/ppo.hpp"
#include "polylife/learners/random_learner.hpp"

namespace polylife::learners {

enum class LearnerKind { Dqn, Drqn, Ppo, PpoLstm, UniformRandom };

const char* to_string(LearnerKind k);
LearnerKind parse_learner_kind(const std::string& name);
bool is_recurrent(LearnerKind k);

struct LearnerConfig {
  LearnerKind kind = LearnerKind::Dqn;
  DqnConfig dqn;
  PpoConfig ppo;
};

/// Default hyperparameters for a learner on a domain. PPO on the partially
/// observable domain uses 3 epochs and updates every 100 steps instead of 10
/// epochs at every episode end.
LearnerConfig default_learner_config(LearnerKind kind, envs::Domain domain);

LearnerPtr make_learner(const LearnerConfig& config, int obs_dim, int n_actions, std::uint64_t seed);

struct BurnInResult {
  int steps = 0;
  double reward = 0;
  bool terminal = false;
  Observation obs;  // observation after the last burn-in step
};

/// Runs the learner's burn-in steps on a freshly reset environment, starting
/// from `obs`. A no-op for non-recurrent learners.
BurnInResult burn_in(Learner& learner, envs::Environment& env, const Observation& obs, int n, Rng& env_rng);

}  // namespace polylife::learners
