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
#include "polylife/nn/nn.hpp"

namespace polylife::learners {

struct PpoConfig {
  bool recurrent = false;  // PPO-LSTM: dense-relu then lstm-tanh trunk
  int hidden = 80;
  double gamma = 0.99;
  double gae_lambda = 0.95;
  double clip = 0.10;
  double value_coef = 1.0;
  double entropy_coef = 0.01;
  double learning_rate = 0.00025;
  int epochs = 10;
  int minibatch = 34;
  double max_grad_norm = 1.0;
  int update_every = 0;  // steps between updates; 0 = at the end of every episode
  int burn_in = 15;      // PPO-LSTM

  void validate() const;
};

/// min(g A, clip(g, 1 - eps, 1 + eps) A).
double clipped_surrogate(double ratio, double advantage, double clip);

/// Derivative of clipped_surrogate with respect to the ratio.
double clipped_surrogate_grad(double ratio, double advantage, double clip);

/// Proximal policy optimisation with a shared trunk, a softmax actor head and
/// a linear critic head. Minimises
///   -surrogate + value_coef * (V - R)^2 - entropy_coef * H(pi)
/// with Adam and global-norm gradient clipping.
class PpoLearner final : public Learner {
 public:
  PpoLearner(const PpoConfig& config, int obs_dim, int n_actions, std::uint64_t seed);

  std::string name() const override { return config_.recurrent ? "ppo-lstm" : "ppo"; }
  bool recurrent() const override { return config_.recurrent; }
  void begin_episode(int task_index) override;
  int act(const Observation& obs) override;
  void observe(double reward, const Observation& next_obs, bool terminal, bool time_limit) override;
  Eigen::VectorXd action_distribution(const Observation& obs) const override;
  std::int64_t steps() const override { return steps_; }
  std::int64_t updates() const override { return updates_; }

  const PpoConfig& config() const { return config_; }
  const nn::NetworkSpec& spec() const { return spec_; }
  const nn::ParamSet<double>& params() const { return params_; }
  nn::ParamSet<double>& mutable_params() { return params_; }
  const nn::RecurrentState<double>& recurrent_state() const { return act_state_; }
  bool in_burn_in() const { return config_.recurrent && episode_step_ < config_.burn_in; }
  std::size_t rollout_size() const { return rollout_.size(); }

  /// Probability ratios pi(a|s) / pi_old(a|s) of the stored rollout under
  /// the current parameters, replaying recurrent steps from stored states.
  std::vector<double> rollout_ratios() const;

  /// Samples an action from `probs` with the learner's RNG.
  int sample_action(const Eigen::VectorXd& probs);

 private:
  struct Step {
    Observation obs;
    int action = 0;
    double old_prob = 0;
    double value = 0;
    double reward = 0;
    nn::RecurrentState<double> state;  // before the step, recurrent only
    bool segment_end = false;          // last step of an episode
    double bootstrap = 0;              // value after a segment end
    double advantage = 0, ret = 0;
  };

  Eigen::VectorXd evaluate(const Observation& obs, nn::RecurrentState<double>* state) const;
  void update();
  void train_batch(const std::vector<std::size_t>& idx);
  void train_chunk(std::size_t begin, std::size_t end);
  Eigen::VectorXd sample_gradient(const Eigen::VectorXd& out, const Step& s, double weight) const;

  PpoConfig config_;
  int n_actions_;
  nn::NetworkSpec spec_;
  nn::ParamSet<double> params_;
  nn::OptimizerState<double> opt_;
  Rng rng_;
  nn::RecurrentState<double> act_state_;
  std::vector<Step> rollout_;
  std::int64_t steps_ = 0, updates_ = 0, episode_step_ = 0;
  Observation last_obs_, last_next_obs_;
  nn::RecurrentState<double> last_state_;
  int last_action_ = 0;
  double last_prob_ = 0, last_value_ = 0;
  bool pending_ = false, last_recorded_ = false;
};

}  // namespace polylife::learners
