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

#include "polylife/learners/factory.hpp"

#include "polylife/core/error.hpp"

namespace polylife::learners {

const char* to_string(LearnerKind k) {
  switch (k) {
    case LearnerKind::Dqn: return "dqn";
    case LearnerKind::Drqn: return "drqn";
    case LearnerKind::Ppo: return "ppo";
    case LearnerKind::PpoLstm: return "ppo-lstm";
    case LearnerKind::UniformRandom: return "uniform-random";
  }
  return "?";
}

LearnerKind parse_learner_kind(const std::string& name) {
  for (auto k : {LearnerKind::Dqn, LearnerKind::Drqn, LearnerKind::Ppo, LearnerKind::PpoLstm,
                 LearnerKind::UniformRandom})
    if (name == to_string(k)) return k;
  throw ConfigError("unknown learner '" + name + "' (dqn, drqn, ppo, ppo-lstm, uniform-random)");
}

bool is_recurrent(LearnerKind k) { return k == LearnerKind::Drqn || k == LearnerKind::PpoLstm; }

LearnerConfig default_learner_config(LearnerKind kind, envs::Domain domain) {
  LearnerConfig c;
  c.kind = kind;
  c.dqn.recurrent = kind == LearnerKind::Drqn;
  c.ppo.recurrent = kind == LearnerKind::PpoLstm;
  if (domain == envs::Domain::Pocman) {
    c.ppo.epochs = 3;
    c.ppo.update_every = 100;
  }
  return c;
}

LearnerPtr make_learner(const LearnerConfig& config, int obs_dim, int n_actions, std::uint64_t seed) {
  switch (config.kind) {
    case LearnerKind::Dqn:
    case LearnerKind::Drqn: {
      DqnConfig d = config.dqn;
      d.recurrent = config.kind == LearnerKind::Drqn;
      return std::make_unique<DqnLearner>(d, obs_dim, n_actions, seed);
    }
    case LearnerKind::Ppo:
    case LearnerKind::PpoLstm: {
      PpoConfig p = config.ppo;
      p.recurrent = config.kind == LearnerKind::PpoLstm;
      return std::make_unique<PpoLearner>(p, obs_dim, n_actions, seed);
    }
    case LearnerKind::UniformRandom: return std::make_unique<RandomLearner>(n_actions, seed);
  }
  throw ConfigError("unknown learner kind");
}

BurnInResult burn_in(Learner& learner, envs::Environment& env, const Observation& obs, int n, Rng& env_rng) {
  BurnInResult r;
  r.obs = obs;
  if (!learner.recurrent()) return r;
  for (; r.steps < n && !r.terminal; ++r.steps) {
    const int a = learner.act(r.obs);
    const auto s = env.step(a, env_rng);
    learner.observe(s.reward, s.obs, s.terminal, s.time_limit);
    r.reward += s.reward;
    r.terminal = s.terminal;
    r.obs = s.obs;
  }
  return r;
}

}  // namespace polylife::learners
