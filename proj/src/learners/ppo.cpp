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

#include "polylife/learners/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "polylife/core/error.hpp"
#include "polylife/learners/gae.hpp"

namespace polylife::learners {

using Mat = nn::Matrix<double>;

void PpoConfig::validate() const {
  if (hidden <= 0 || epochs <= 0 || minibatch <= 0 || update_every < 0 || burn_in < 0)
    throw ConfigError("ppo: hidden, epochs and minibatch must be positive; update_every and burn_in >= 0");
  if (gamma < 0 || gamma > 1 || gae_lambda < 0 || gae_lambda > 1)
    throw ConfigError("ppo: gamma and gae_lambda must be in [0, 1]");
  if (clip <= 0) throw ConfigError("ppo: clip coefficient must be positive");
  if (value_coef < 0 || entropy_coef < 0) throw ConfigError("ppo: loss coefficients must be >= 0");
  if (learning_rate <= 0 || max_grad_norm <= 0) throw ConfigError("ppo: learning_rate and max_grad_norm must be positive");
}

double clipped_surrogate(double ratio, double advantage, double clip) {
  return std::min(ratio * advantage, std::clamp(ratio, 1.0 - clip, 1.0 + clip) * advantage);
}

double clipped_surrogate_grad(double ratio, double advantage, double clip) {
  const double clipped = std::clamp(ratio, 1.0 - clip, 1.0 + clip);
  if (ratio * advantage <= clipped * advantage) return advantage;
  return 0.0;
}

PpoLearner::PpoLearner(const PpoConfig& config, int obs_dim, int n_actions, std::uint64_t seed)
    : config_(config),
      n_actions_(n_actions),
      spec_(nn::actor_critic_network(obs_dim, n_actions, config.recurrent, config.hidden)),
      rng_(seed) {
  config_.validate();
  params_ = nn::init_params<double>(spec_, rng_);
  opt_ = nn::OptimizerState<double>::create(nn::OptimizerConfig::adam(config_.learning_rate), params_);
}

Eigen::VectorXd PpoLearner::evaluate(const Observation& obs, nn::RecurrentState<double>* state) const {
  return nn::forward(spec_, params_, obs, state).col(0);
}

void PpoLearner::begin_episode(int /*task_index*/) {
  episode_step_ = 0;
  pending_ = false;
  if (config_.recurrent) act_state_ = nn::RecurrentState<double>::zeros(config_.hidden);
}

int PpoLearner::sample_action(const Eigen::VectorXd& probs) {
  const double u = uniform01(rng_);
  double acc = 0;
  for (Eigen::Index a = 0; a + 1 < probs.size(); ++a) {
    acc += probs[a];
    if (u < acc) return static_cast<int>(a);
  }
  return static_cast<int>(probs.size() - 1);
}

int PpoLearner::act(const Observation& obs) {
  if (pending_) throw UsageError("ppo: act called twice without observe");
  last_recorded_ = !in_burn_in();
  if (config_.recurrent) last_state_ = act_state_;
  const Eigen::VectorXd out = evaluate(obs, config_.recurrent ? &act_state_ : nullptr);
  const Eigen::VectorXd probs = out.head(n_actions_);
  const int action = last_recorded_ ? sample_action(probs) : uniform_index(rng_, n_actions_);
  last_obs_ = obs;
  last_action_ = action;
  last_prob_ = probs[action];
  last_value_ = out[n_actions_];
  pending_ = true;
  return action;
}

void PpoLearner::observe(double reward, const Observation& next_obs, bool terminal, bool time_limit) {
  if (!pending_) throw UsageError("ppo: observe without a preceding act");
  pending_ = false;
  ++steps_;
  ++episode_step_;
  if (last_recorded_) {
    Step s;
    s.obs = last_obs_;
    s.action = last_action_;
    s.old_prob = last_prob_;
    s.value = last_value_;
    s.reward = reward;
    s.state = std::move(last_state_);
    if (terminal) {
      s.segment_end = true;
      if (time_limit) {
        auto state = act_state_;
        s.bootstrap = evaluate(next_obs, config_.recurrent ? &state : nullptr)[n_actions_];
      }
    }
    rollout_.push_back(std::move(s));
    last_next_obs_ = next_obs;
  }
  const bool due = config_.update_every == 0
                       ? terminal
                       : static_cast<int>(rollout_.size()) >= config_.update_every;
  if (due && !rollout_.empty()) update();
}

void PpoLearner::update() {
  // Close the trailing open segment with the current value estimate.
  if (!rollout_.back().segment_end) {
    auto state = act_state_;
    rollout_.back().bootstrap = evaluate(last_next_obs_, config_.recurrent ? &state : nullptr)[n_actions_];
  }
  std::vector<std::pair<std::size_t, std::size_t>> segments;
  for (std::size_t begin = 0, i = 0; i < rollout_.size(); ++i) {
    if (rollout_[i].segment_end || i + 1 == rollout_.size()) {
      segments.emplace_back(begin, i + 1);
      begin = i + 1;
    }
  }
  for (auto [begin, end] : segments) {
    std::vector<double> rewards, values;
    std::vector<bool> terminals(end - begin, false);
    for (std::size_t i = begin; i < end; ++i) {
      rewards.push_back(rollout_[i].reward);
      values.push_back(rollout_[i].value);
    }
    values.push_back(rollout_[end - 1].bootstrap);
    const auto g = gae_advantages(rewards, values, terminals, config_.gamma, config_.gae_lambda);
    for (std::size_t i = begin; i < end; ++i) {
      rollout_[i].advantage = g.advantages[i - begin];
      rollout_[i].ret = g.returns[i - begin];
    }
  }

  const std::size_t mb = static_cast<std::size_t>(config_.minibatch);
  if (!config_.recurrent) {
    std::vector<std::size_t> order(rollout_.size());
    std::iota(order.begin(), order.end(), 0);
    for (int epoch = 0; epoch < config_.epochs; ++epoch) {
      std::shuffle(order.begin(), order.end(), rng_);
      for (std::size_t b = 0; b < order.size(); b += mb)
        train_batch({order.begin() + b, order.begin() + std::min(order.size(), b + mb)});
    }
  } else {
    std::vector<std::pair<std::size_t, std::size_t>> chunks;
    for (auto [begin, end] : segments)
      for (std::size_t b = begin; b < end; b += mb) chunks.emplace_back(b, std::min(end, b + mb));
    for (int epoch = 0; epoch < config_.epochs; ++epoch) {
      std::shuffle(chunks.begin(), chunks.end(), rng_);
      for (auto [b, e] : chunks) train_chunk(b, e);
    }
  }
  rollout_.clear();
}

Eigen::VectorXd PpoLearner::sample_gradient(const Eigen::VectorXd& out, const Step& s, double weight) const {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(out.size());
  const double p = out[s.action];
  const double ratio = p / s.old_prob;
  g[s.action] -= weight * clipped_surrogate_grad(ratio, s.advantage, config_.clip) / s.old_prob;
  for (int a = 0; a < n_actions_; ++a)
    g[a] += weight * config_.entropy_coef * (std::log(std::max(out[a], 1e-300)) + 1.0);
  g[n_actions_] = weight * 2.0 * config_.value_coef * (out[n_actions_] - s.ret);
  return g;
}

void PpoLearner::train_batch(const std::vector<std::size_t>& idx) {
  const Eigen::Index n = static_cast<Eigen::Index>(idx.size());
  Mat x(spec_.input_dim, n);
  for (Eigen::Index b = 0; b < n; ++b) x.col(b) = rollout_[idx[b]].obs;
  nn::Tape<double> tape;
  const Mat out = nn::forward(spec_, params_, x, nullptr, &tape);
  Mat grad(out.rows(), n);
  for (Eigen::Index b = 0; b < n; ++b)
    grad.col(b) = sample_gradient(out.col(b), rollout_[idx[b]], 1.0 / static_cast<double>(n));
  auto grads = nn::clip_gradients(nn::backward(spec_, params_, tape, grad), nn::ClipMode::GlobalNorm,
                                  config_.max_grad_norm);
  nn::optimizer_step(params_, grads, opt_);
  ++updates_;
}

void PpoLearner::train_chunk(std::size_t begin, std::size_t end) {
  auto state = rollout_[begin].state;
  nn::Tape<double> tape;
  std::vector<Mat> grads;
  const double weight = 1.0 / static_cast<double>(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    const Mat out = nn::forward(spec_, params_, rollout_[i].obs, &state, &tape);
    grads.emplace_back(sample_gradient(out.col(0), rollout_[i], weight));
  }
  auto g = nn::clip_gradients(nn::backward(spec_, params_, tape, grads), nn::ClipMode::GlobalNorm,
                              config_.max_grad_norm);
  nn::optimizer_step(params_, g, opt_);
  ++updates_;
}

std::vector<double> PpoLearner::rollout_ratios() const {
  std::vector<double> out;
  nn::RecurrentState<double> state;
  for (std::size_t i = 0; i < rollout_.size(); ++i) {
    const auto& s = rollout_[i];
    if (config_.recurrent && (i == 0 || rollout_[i - 1].segment_end)) state = s.state;
    const Eigen::VectorXd o = evaluate(s.obs, config_.recurrent ? &state : nullptr);
    out.push_back(o[s.action] / s.old_prob);
  }
  return out;
}

Eigen::VectorXd PpoLearner::action_distribution(const Observation& obs) const {
  if (config_.recurrent) {
    auto state = nn::RecurrentState<double>::zeros(config_.hidden);
    return evaluate(obs, &state).head(n_actions_);
  }
  return evaluate(obs, nullptr).head(n_actions_);
}

}  // namespace polylife::learners
