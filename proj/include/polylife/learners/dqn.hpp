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

#include "polylife/learners/learner.hpp"
#include "polylife/learners/replay_buffer.hpp"
#include "polylife/nn/nn.hpp"

namespace polylife::learners {

struct DqnConfig {
  bool recurrent = false;  // DRQN: dense-relu then lstm-tanh
  int hidden = 80;
  double gamma = 0.99;
  int batch_size = 10;
  int update_every = 4;  // steps
  std::int64_t buffer_capacity = 400000;
  ReplayPolicy replay = ReplayPolicy::Fifo;
  int n_tasks = 1;  // task-matching partitions
  double learning_rate = 0.1;
  double rho = 0.95;
  double exploration = 0.2;
  double clip_value = 10.0;
  std::int64_t replay_start = 50000;  // steps
  std::int64_t target_sync = 10000;   // steps
  int trace_length = 15;              // DRQN
  int burn_in = 15;                   // DRQN

  void validate() const;
};

struct Transition {
  Observation obs;
  int action = 0;
  double reward = 0;
  Observation next_obs;
  bool terminal = false;  // true terminal state, no bootstrap
  int task_index = 0;
  std::int64_t time = 0;     // step within the episode
  std::int64_t episode = 0;  // learner-local episode counter
  bool burn_in = false;      // stored for recurrent warm-up only
};

/// Regression target r + gamma * max_a' Q_target(s', a'), or r when terminal.
double q_target(double reward, bool terminal, double max_next_q, double gamma);

/// DQN and DRQN with a target network, epsilon-greedy exploration without
/// annealing, elementwise gradient clipping and AdaDelta.
class DqnLearner final : public Learner {
 public:
  DqnLearner(const DqnConfig& config, int obs_dim, int n_actions, std::uint64_t seed);

  std::string name() const override { return config_.recurrent ? "drqn" : "dqn"; }
  bool recurrent() const override { return config_.recurrent; }
  void begin_episode(int task_index) override;
  int act(const Observation& obs) override;
  void observe(double reward, const Observation& next_obs, bool terminal, bool time_limit) override;
  Eigen::VectorXd action_distribution(const Observation& obs) const override;
  std::int64_t steps() const override { return steps_; }
  std::int64_t updates() const override { return updates_; }

  const DqnConfig& config() const { return config_; }
  const nn::NetworkSpec& spec() const { return spec_; }
  const nn::ParamSet<double>& online() const { return online_; }
  const nn::ParamSet<double>& target() const { return target_; }
  const ReplayBuffer<Transition>& buffer() const { return buffer_; }
  const nn::RecurrentState<double>& recurrent_state() const { return act_state_; }
  bool in_burn_in() const { return config_.recurrent && episode_step_ < config_.burn_in; }

  /// Epsilon-greedy choice over `q` using the learner's RNG.
  int select(const Eigen::VectorXd& q);
  /// One gradient step on an explicit batch of independent transitions.
  /// Returns the mean squared TD error before the step.
  double train_on(const std::vector<const Transition*>& batch);
  /// Mean squared TD error of the online network on `batch`.
  double td_error(const std::vector<const Transition*>& batch) const;

 private:
  Eigen::VectorXd q_values(const Observation& obs, nn::RecurrentState<double>* state) const;
  void update();
  void update_recurrent();
  void apply(const nn::ParamSet<double>& grads);

  DqnConfig config_;
  int n_actions_;
  nn::NetworkSpec spec_;
  nn::ParamSet<double> online_, target_;
  nn::OptimizerState<double> opt_;
  ReplayBuffer<Transition> buffer_;
  Rng rng_;
  nn::RecurrentState<double> act_state_;
  std::int64_t steps_ = 0, updates_ = 0, episodes_ = 0, episode_step_ = 0;
  int task_ = 0;
  Observation last_obs_;
  int last_action_ = 0;
  bool pending_ = false;
};

}  // namespace polylife::learners
