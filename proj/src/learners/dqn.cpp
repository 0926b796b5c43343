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

#include "polylife/learners/dqn.hpp"

#include <algorithm>
#include <cmath>

#include "polylife/core/error.hpp"

namespace polylife::learners {

using Mat = nn::Matrix<double>;

int argmax_random_tie(const Eigen::VectorXd& values, Rng& rng) {
  const double best = values.maxCoeff();
  int ties = 0, pick = 0;
  for (Eigen::Index a = 0; a < values.size(); ++a) {
    if (values[a] == best && uniform_index(rng, ++ties) == 0) pick = static_cast<int>(a);
  }
  return pick;
}

void DqnConfig::validate() const {
  if (hidden <= 0 || batch_size <= 0 || update_every <= 0 || buffer_capacity <= 0 || target_sync <= 0)
    throw ConfigError("dqn: hidden, batch_size, update_every, buffer_capacity and target_sync must be positive");
  if (replay_start < 0) throw ConfigError("dqn: replay_start must be >= 0");
  if (gamma < 0 || gamma > 1) throw ConfigError("dqn: gamma must be in [0, 1]");
  if (exploration < 0 || exploration > 1) throw ConfigError("dqn: exploration must be in [0, 1]");
  if (learning_rate <= 0 || rho <= 0 || rho >= 1 || clip_value <= 0)
    throw ConfigError("dqn: learning_rate and clip_value must be positive, rho in (0, 1)");
  if (recurrent && (trace_length <= 0 || burn_in < 0))
    throw ConfigError("drqn: trace_length must be positive and burn_in >= 0");
  if (recurrent && replay != ReplayPolicy::Fifo) throw ConfigError("drqn samples traces and needs fifo replay");
}

double q_target(double reward, bool terminal, double max_next_q, double gamma) {
  return terminal ? reward : reward + gamma * max_next_q;
}

DqnLearner::DqnLearner(const DqnConfig& config, int obs_dim, int n_actions, std::uint64_t seed)
    : config_(config),
      n_actions_(n_actions),
      spec_(nn::q_network(obs_dim, n_actions, config.recurrent, config.hidden)),
      buffer_(config.replay, static_cast<std::size_t>(config.buffer_capacity), config.n_tasks),
      rng_(seed) {
  config_.validate();
  online_ = nn::init_params<double>(spec_, rng_);
  target_ = online_;
  opt_ = nn::OptimizerState<double>::create(nn::OptimizerConfig::adadelta(config_.learning_rate, config_.rho), online_);
}

void DqnLearner::begin_episode(int task_index) {
  task_ = task_index;
  episode_step_ = 0;
  ++episodes_;
  pending_ = false;
  if (config_.recurrent) act_state_ = nn::RecurrentState<double>::zeros(config_.hidden);
}

Eigen::VectorXd DqnLearner::q_values(const Observation& obs, nn::RecurrentState<double>* state) const {
  return nn::forward(spec_, online_, obs, state).col(0);
}

int DqnLearner::select(const Eigen::VectorXd& q) {
  if (bernoulli(rng_, config_.exploration)) return uniform_index(rng_, n_actions_);
  return argmax_random_tie(q, rng_);
}

int DqnLearner::act(const Observation& obs) {
  if (pending_) throw UsageError("dqn: act called twice without observe");
  int action;
  if (config_.recurrent) {
    const Eigen::VectorXd q = q_values(obs, &act_state_);
    action = in_burn_in() ? uniform_index(rng_, n_actions_) : select(q);
  } else {
    action = select(q_values(obs, nullptr));
  }
  last_obs_ = obs;
  last_action_ = action;
  pending_ = true;
  return action;
}

void DqnLearner::observe(double reward, const Observation& next_obs, bool terminal, bool time_limit) {
  if (!pending_) throw UsageError("dqn: observe without a preceding act");
  pending_ = false;
  Transition t{last_obs_, last_action_, reward, next_obs, terminal && !time_limit,
               task_,     episode_step_, episodes_, in_burn_in()};
  buffer_.insert(std::move(t), task_, rng_);
  ++steps_;
  ++episode_step_;
  if (steps_ >= config_.replay_start && steps_ % config_.update_every == 0) {
    if (config_.recurrent)
      update_recurrent();
    else
      update();
  }
  if (steps_ % config_.target_sync == 0) target_ = online_;
}

void DqnLearner::apply(const nn::ParamSet<double>& grads) {
  const auto clipped = nn::clip_gradients(grads, nn::ClipMode::ElementwiseAbs, config_.clip_value);
  nn::optimizer_step(online_, clipped, opt_);
  ++updates_;
}

double DqnLearner::td_error(const std::vector<const Transition*>& batch) const {
  if (batch.empty()) return 0.0;
  const Eigen::Index n = static_cast<Eigen::Index>(batch.size());
  Mat x(spec_.input_dim, n), xn(spec_.input_dim, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    x.col(b) = batch[b]->obs;
    xn.col(b) = batch[b]->next_obs;
  }
  const Mat q = nn::forward(spec_, online_, x);
  const Mat qn = nn::forward(spec_, target_, xn);
  double sum = 0;
  for (Eigen::Index b = 0; b < n; ++b) {
    const double y = q_target(batch[b]->reward, batch[b]->terminal, qn.col(b).maxCoeff(), config_.gamma);
    const double e = q(batch[b]->action, b) - y;
    sum += e * e;
  }
  return sum / static_cast<double>(n);
}

double DqnLearner::train_on(const std::vector<const Transition*>& batch) {
  if (config_.recurrent) throw UsageError("train_on needs a non-recurrent network");
  if (batch.empty()) return 0.0;
  const Eigen::Index n = static_cast<Eigen::Index>(batch.size());
  Mat x(spec_.input_dim, n), xn(spec_.input_dim, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    x.col(b) = batch[b]->obs;
    xn.col(b) = batch[b]->next_obs;
  }
  nn::Tape<double> tape;
  const Mat q = nn::forward(spec_, online_, x, nullptr, &tape);
  const Mat qn = nn::forward(spec_, target_, xn);
  Mat grad = Mat::Zero(q.rows(), n);
  double loss = 0;
  for (Eigen::Index b = 0; b < n; ++b) {
    const double y = q_target(batch[b]->reward, batch[b]->terminal, qn.col(b).maxCoeff(), config_.gamma);
    const double e = q(batch[b]->action, b) - y;
    loss += e * e;
    grad(batch[b]->action, b) = 2.0 * e / static_cast<double>(n);
  }
  apply(nn::backward(spec_, online_, tape, grad));
  return loss / static_cast<double>(n);
}

void DqnLearner::update() {
  const auto batch = buffer_.sample(static_cast<std::size_t>(config_.batch_size), rng_, task_);
  if (batch.size() < static_cast<std::size_t>(config_.batch_size)) return;
  train_on(batch);
}

// Samples `batch_size` windows of burn_in + trace_length consecutive stored
// steps from one episode. The burn-in prefix only warms both networks; the
// loss covers the trace.
void DqnLearner::update_recurrent() {
  const auto& store = buffer_.ordered();
  const std::size_t prefix = static_cast<std::size_t>(config_.burn_in);
  const std::size_t len = static_cast<std::size_t>(config_.trace_length);
  const std::size_t window = prefix + len;
  if (store.size() < window) return;
  const std::size_t n_starts = store.size() - window + 1;
  const int batch = config_.batch_size;

  std::vector<std::size_t> starts;
  for (int tries = 0; tries < 100 * batch && static_cast<int>(starts.size()) < batch; ++tries) {
    const std::size_t s = static_cast<std::size_t>(uniform_index(rng_, static_cast<int>(n_starts)));
    const auto& first = store.at(s);
    const auto& last = store.at(s + window - 1);
    if (first.episode != last.episode || store.at(s + prefix).burn_in) continue;
    // Only the final step of a window may be terminal.
    bool ok = true;
    for (std::size_t k = s; k + 1 < s + window && ok; ++k) ok = !store.at(k).terminal;
    if (ok) starts.push_back(s);
  }
  if (static_cast<int>(starts.size()) < batch) return;

  const Eigen::Index B = batch;
  auto column_batch = [&](std::size_t offset, bool next) {
    Mat x(spec_.input_dim, B);
    for (Eigen::Index b = 0; b < B; ++b) {
      const auto& tr = store.at(starts[b] + offset);
      x.col(b) = next ? tr.next_obs : tr.obs;
    }
    return x;
  };

  auto online_state = nn::RecurrentState<double>::zeros(config_.hidden, B);
  auto target_state = nn::RecurrentState<double>::zeros(config_.hidden, B);
  for (std::size_t k = 0; k < prefix; ++k) {
    const Mat x = column_batch(k, false);
    nn::forward(spec_, online_, x, &online_state);
    nn::forward(spec_, target_, x, &target_state);
  }
  // Target network consumes the first trace observation so its state is one
  // step ahead; from then on it sees each step's next observation.
  nn::forward(spec_, target_, column_batch(prefix, false), &target_state);

  nn::Tape<double> tape;
  std::vector<Mat> grads;
  grads.reserve(len);
  const double scale = 2.0 / static_cast<double>(B * static_cast<Eigen::Index>(len));
  for (std::size_t k = 0; k < len; ++k) {
    const Mat q = nn::forward(spec_, online_, column_batch(prefix + k, false), &online_state, &tape);
    const Mat qn = nn::forward(spec_, target_, column_batch(prefix + k, true), &target_state);
    Mat g = Mat::Zero(q.rows(), B);
    for (Eigen::Index b = 0; b < B; ++b) {
      const auto& tr = store.at(starts[b] + prefix + k);
      const double y = q_target(tr.reward, tr.terminal, qn.col(b).maxCoeff(), config_.gamma);
      g(tr.action, b) = scale * (q(tr.action, b) - y);
    }
    grads.push_back(std::move(g));
  }
  apply(nn::backward(spec_, online_, tape, grads));
}

Eigen::VectorXd DqnLearner::action_distribution(const Observation& obs) const {
  Eigen::VectorXd q;
  if (config_.recurrent) {
    auto state = nn::RecurrentState<double>::zeros(config_.hidden);
    q = q_values(obs, &state);
  } else {
    q = q_values(obs, nullptr);
  }
  const double best = q.maxCoeff();
  const double ties = static_cast<double>((q.array() == best).count());
  Eigen::VectorXd p = Eigen::VectorXd::Constant(n_actions_, config_.exploration / n_actions_);
  for (int a = 0; a < n_actions_; ++a)
    if (q[a] == best) p[a] += (1.0 - config_.exploration) / ties;
  return p;
}

}  // namespace polylife::learners
