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

#include "doctest.h"

#include <cmath>
#include <numeric>
#include <set>

#include "polylife/core/error.hpp"
#include "polylife/envs/environment.hpp"
#include "polylife/learners/factory.hpp"
#include "polylife/learners/gae.hpp"

using namespace polylife;
using namespace polylife::learners;
using envs::Observation;

namespace {

envs::TaskSpec default_cartpole() { return {0, envs::CartpoleParams{1.0, 0.1, 1.0}}; }

envs::TaskSpec pocman_task() { return envs::make_pocman_domain()[4]; }

// Runs `steps` environment steps, starting episodes as needed.
void drive(Learner& learner, envs::Environment& env, Rng& env_rng, std::int64_t steps, int task = 0) {
  std::int64_t done_steps = 0;
  while (done_steps < steps) {
    Observation obs = env.reset(env_rng);
    learner.begin_episode(task);
    for (bool end = false; !end && done_steps < steps; ++done_steps) {
      const auto s = env.step(learner.act(obs), env_rng);
      learner.observe(s.reward, s.obs, s.terminal, s.time_limit);
      end = s.terminal;
      obs = s.obs;
    }
  }
}

Observation obs4(double a, double b, double c, double d) {
  Observation o(4);
  o << a, b, c, d;
  return o;
}

}  // namespace

TEST_CASE("fifo replay evicts the oldest entry") {
  ReplayBuffer<int> buf(ReplayPolicy::Fifo, 3);
  Rng rng(1);
  for (int i = 1; i <= 4; ++i) buf.insert(i, 0, rng);
  REQUIRE(buf.size() == 3);
  std::multiset<int> got;
  for (std::size_t i = 0; i < buf.size(); ++i) got.insert(buf.at(i));
  CHECK(got == std::multiset<int>{2, 3, 4});
  CHECK(buf.ordered().at(0) == 2);
  CHECK(buf.ordered().at(2) == 4);
}

TEST_CASE("gdm reservoir retains each item with probability B/t") {
  const int B = 100, t = 1000, trials = 10000;
  std::vector<int> kept(t, 0);
  Rng rng(42);
  for (int trial = 0; trial < trials; ++trial) {
    ReplayBuffer<int> buf(ReplayPolicy::Gdm, B);
    for (int i = 0; i < t; ++i) buf.insert(i, 0, rng);
    REQUIRE(buf.size() == static_cast<std::size_t>(B));
    for (std::size_t i = 0; i < buf.size(); ++i) ++kept[buf.at(i)];
  }
  const double p = static_cast<double>(B) / t;
  const double sigma = std::sqrt(p * (1 - p) / trials);
  int outside = 0;
  for (int i = 0; i < t; ++i) outside += std::abs(kept[i] / double(trials) - p) > 3 * sigma;
  // 3 sigma bands hold for ~99.7% of items.
  CHECK(outside <= 10);
  for (int i : {0, 1, 500, 998, 999}) CHECK(std::abs(kept[i] / double(trials) - p) <= 4 * sigma);
}

TEST_CASE("gdm-plus-fifo keeps the most recent items and the capacity bound") {
  ReplayBuffer<int> buf(ReplayPolicy::GdmPlusFifo, 100);
  Rng rng(3);
  for (int i = 0; i < 5000; ++i) buf.insert(i, 0, rng);
  CHECK(buf.size() == 100);
  std::set<int> items;
  for (std::size_t i = 0; i < buf.size(); ++i) items.insert(buf.at(i));
  for (int i = 4990; i < 5000; ++i) CHECK(items.count(i) == 1);
  CHECK_THROWS_AS(ReplayBuffer<int>(ReplayPolicy::Fifo, 0), ConfigError);
}

TEST_CASE("task-matching replay routes by task") {
  ReplayBuffer<int> buf(ReplayPolicy::TaskMatching, 30, 3);
  Rng rng(5);
  for (int i = 0; i < 90; ++i) buf.insert(100 * (i % 3) + i, i % 3, rng);
  for (int task = 0; task < 3; ++task) {
    CHECK(buf.size(task) == 10);
    for (const int* x : buf.sample(200, rng, task)) CHECK(*x / 100 == task);
  }
  CHECK_THROWS_AS(buf.insert(1, 3, rng), UsageError);
  CHECK(parse_replay_policy("gdm-plus-fifo") == ReplayPolicy::GdmPlusFifo);
  CHECK_THROWS_AS(parse_replay_policy("lifo"), ConfigError);
}

TEST_CASE("generalised advantage estimation") {
  Rng rng(8);
  std::vector<double> r(10), v(11);
  for (auto& x : r) x = uniform01(rng) * 2 - 1;
  for (auto& x : v) x = uniform01(rng) * 2 - 1;
  const std::vector<bool> none(10, false);

  const auto td = gae_advantages(r, v, none, 0.9, 0.0);
  for (int t = 0; t < 10; ++t) CHECK(td.advantages[t] == doctest::Approx(r[t] + 0.9 * v[t + 1] - v[t]));
  const auto myopic = gae_advantages(r, v, none, 0.0, 0.7);
  for (int t = 0; t < 10; ++t) CHECK(myopic.advantages[t] == doctest::Approx(r[t] - v[t]));

  // Direct exponentially weighted sum of TD residuals.
  const double g = 0.97, l = 0.8;
  const auto est = gae_advantages(r, v, none, g, l);
  for (int t = 0; t < 10; ++t) {
    double sum = 0, w = 1;
    for (int k = t; k < 10; ++k, w *= g * l) sum += w * (r[k] + g * v[k + 1] - v[k]);
    CHECK(std::abs(est.advantages[t] - sum) <= 1e-10);
    CHECK(std::abs(est.returns[t] - (sum + v[t])) <= 1e-10);
  }

  std::vector<bool> term(10, false);
  term[4] = true;
  const auto cut = gae_advantages(r, v, term, g, l);
  CHECK(cut.advantages[4] == doctest::Approx(r[4] - v[4]));
  CHECK_THROWS_AS(gae_advantages(r, r, none, g, l), ConfigError);
}

TEST_CASE("q-learning regression targets") {
  CHECK(q_target(1.0, false, 10.0, 0.99) == doctest::Approx(10.9));
  CHECK(q_target(1.0, true, 10.0, 0.99) == 1.0);
}

TEST_CASE("dqn epsilon-greedy action frequencies") {
  DqnConfig c;
  SUBCASE("epsilon 0 is greedy") {
    c.exploration = 0.0;
    DqnLearner l(c, 4, 3, 1);
    Eigen::VectorXd q(3);
    q << 0.1, 0.7, -2.0;
    for (int i = 0; i < 1000; ++i) CHECK(l.select(q) == 1);
  }
  SUBCASE("epsilon 1 is uniform") {
    c.exploration = 1.0;
    DqnLearner l(c, 4, 4, 2);
    Eigen::VectorXd q = Eigen::VectorXd::LinSpaced(4, 0, 3);
    std::vector<int> count(4, 0);
    for (int i = 0; i < 100000; ++i) ++count[l.select(q)];
    for (int n : count) CHECK(std::abs(n / 100000.0 - 0.25) <= 0.02);
  }
  SUBCASE("epsilon 0.2 over two actions") {
    DqnLearner l(c, 4, 2, 3);
    Eigen::VectorXd q(2);
    q << -1.0, 1.0;
    int best = 0;
    for (int i = 0; i < 100000; ++i) best += l.select(q) == 1;
    CHECK(std::abs(best / 100000.0 - 0.9) <= 0.01);
  }
  SUBCASE("ties are broken uniformly") {
    c.exploration = 0.0;
    DqnLearner l(c, 4, 2, 4);
    Eigen::VectorXd q = Eigen::VectorXd::Zero(2);
    int first = 0;
    for (int i = 0; i < 20000; ++i) first += l.select(q) == 0;
    CHECK(std::abs(first / 20000.0 - 0.5) <= 0.02);
  }
}

TEST_CASE("dqn update on a repeated transition lowers its TD error") {
  DqnConfig c;
  c.hidden = 8;
  DqnLearner l(c, 4, 2, 11);
  const Transition t{obs4(0.01, -0.02, 0.03, 0.04), 1, 1.0, obs4(0.02, -0.01, 0.02, 0.05), false, 0, 0, 0, false};
  const std::vector<const Transition*> batch(10, &t);
  const double before = l.td_error(batch);
  const double reported = l.train_on(batch);
  CHECK(reported == doctest::Approx(before));
  CHECK(l.td_error(batch) < before);
}

TEST_CASE("dqn: no learning before replay start, target moves only at syncs") {
  DqnConfig c;
  c.replay_start = 400;
  c.target_sync = 250;
  c.buffer_capacity = 5000;
  DqnLearner l(c, 4, 2, 21);
  envs::Environment env(default_cartpole());
  Rng er(3);
  const auto initial = l.online().flatten();
  drive(l, env, er, 399);
  CHECK(l.online().flatten() == initial);
  CHECK(l.updates() == 0);
  drive(l, env, er, 1);
  CHECK(l.updates() == 1);
  CHECK(l.online().flatten() != initial);
  // Last sync happened at step 250, before any update.
  CHECK(l.target().flatten() == initial);
  auto target = l.target().flatten();
  for (int s = 401; s <= 800; ++s) {
    drive(l, env, er, 1);
    if (s % 250 == 0) {
      CHECK(l.target().flatten() == l.online().flatten());
      target = l.target().flatten();
    } else {
      CHECK(l.target().flatten() == target);
    }
  }
  CHECK(l.buffer().size() == 800);
}

TEST_CASE("dqn stores time-limit endings as non-terminal") {
  DqnConfig c;
  c.replay_start = 1000000;
  DqnLearner l(c, 4, 2, 5);
  l.begin_episode(0);
  l.act(obs4(0, 0, 0, 0));
  l.observe(1.0, obs4(0, 0, 0, 0), true, true);
  l.begin_episode(0);
  l.act(obs4(0, 0, 0, 0));
  l.observe(1.0, obs4(0, 0, 0, 0), true, false);
  CHECK_FALSE(l.buffer().at(0).terminal);
  CHECK(l.buffer().at(1).terminal);
  CHECK_THROWS_AS(l.observe(0.0, obs4(0, 0, 0, 0), false, false), UsageError);
}

TEST_CASE("drqn burn-in warms the state and trace updates stay finite") {
  auto cfg = default_learner_config(LearnerKind::Drqn, envs::Domain::Pocman);
  cfg.dqn.replay_start = 200;
  cfg.dqn.buffer_capacity = 5000;
  auto learner = make_learner(cfg, envs::kPocmanObsDim, envs::kPocmanActions, 9);
  auto& drqn = dynamic_cast<DqnLearner&>(*learner);
  envs::Environment env(pocman_task());
  Rng er(4);
  Observation obs = env.reset(er);
  learner->begin_episode(4);
  const auto r = burn_in(*learner, env, obs, 15, er);
  CHECK(r.steps == 15);
  CHECK(learner->steps() == 15);
  CHECK(drqn.recurrent_state().hidden.norm() > 0);
  CHECK_FALSE(drqn.in_burn_in());
  for (std::size_t i = 0; i < 15; ++i) CHECK(drqn.buffer().at(i).burn_in);

  drive(*learner, env, er, 1200, 4);
  CHECK(learner->updates() > 0);
  CHECK(drqn.online().all_finite());
  const auto p = learner->action_distribution(obs);
  CHECK(p.sum() == doctest::Approx(1.0));
}

TEST_CASE("burn-in is a no-op for feed-forward learners") {
  auto learner = make_learner(default_learner_config(LearnerKind::Dqn, envs::Domain::Cartpole), 4, 2, 1);
  envs::Environment env(default_cartpole());
  Rng er(1);
  const auto obs = env.reset(er);
  learner->begin_episode(0);
  const auto r = burn_in(*learner, env, obs, 15, er);
  CHECK(r.steps == 0);
  CHECK(learner->steps() == 0);
  CHECK(r.obs == obs);
}

TEST_CASE("ppo clipped surrogate arithmetic") {
  CHECK(clipped_surrogate(1.0, 3.5, 0.1) == 3.5);
  CHECK(clipped_surrogate(1.2, 2.0, 0.1) == doctest::Approx(2.2));
  CHECK(clipped_surrogate(0.5, -1.0, 0.1) == doctest::Approx(-0.9));
  Rng rng(6);
  for (int i = 0; i < 1000; ++i) {
    const double g = uniform01(rng) * 3, a = uniform01(rng) * 4 - 2;
    if (a > 0) CHECK(clipped_surrogate(g, a, 0.1) <= g * a + 1e-15);
    if (a < 0) CHECK(clipped_surrogate(g, a, 0.1) <= g * a + 1e-15);
  }
  CHECK(clipped_surrogate_grad(1.2, 2.0, 0.1) == 0.0);
  CHECK(clipped_surrogate_grad(0.8, 2.0, 0.1) == 2.0);
  CHECK(clipped_surrogate_grad(0.5, -1.0, 0.1) == 0.0);
  CHECK(clipped_surrogate_grad(1.5, -1.0, 0.1) == -1.0);
}

TEST_CASE("ppo action sampling") {
  PpoLearner l(PpoConfig{}, 4, 5, 7);
  Eigen::VectorXd uniform = Eigen::VectorXd::Constant(5, 0.2);
  std::vector<int> count(5, 0);
  for (int i = 0; i < 100000; ++i) ++count[l.sample_action(uniform)];
  for (int n : count) CHECK(std::abs(n / 100000.0 - 0.2) <= 0.01);

  // Saturate the actor head: logit 50 on action 2.
  auto& p = l.mutable_params();
  const nn::BlockLayout layout(l.spec());
  const int head = layout.first[l.spec().layers.size()];
  p.blocks[head].setZero();
  p.blocks[head + 1].setZero();
  p.blocks[head + 1](2, 0) = 50.0;
  l.begin_episode(0);
  int hits = 0;
  for (int i = 0; i < 10000; ++i) {
    hits += l.act(obs4(0.01, 0.02, 0.0, -0.01)) == 2;
    l.observe(0.0, obs4(0, 0, 0, 0), false, false);
  }
  CHECK(hits / 10000.0 > 0.999);

  PpoLearner a(PpoConfig{}, 4, 2, 99), b(PpoConfig{}, 4, 2, 99);
  a.begin_episode(0);
  b.begin_episode(0);
  for (int i = 0; i < 100; ++i) {
    const auto o = obs4(0.01 * i, 0, 0, 0);
    CHECK(a.act(o) == b.act(o));
    a.observe(1.0, o, false, false);
    b.observe(1.0, o, false, false);
  }
}

TEST_CASE("ppo first-epoch ratios are exactly one") {
  for (bool recurrent : {false, true}) {
    PpoConfig c;
    c.recurrent = recurrent;
    c.update_every = 1000000;
    const auto task = recurrent ? pocman_task() : default_cartpole();
    envs::Environment env(task);
    PpoLearner l(c, env.observation_dim(), env.action_count(), 13);
    Rng er(2);
    drive(l, env, er, recurrent ? 150 : 120);
    REQUIRE(l.rollout_size() > 0);
    for (double g : l.rollout_ratios()) CHECK(std::abs(g - 1.0) <= 1e-9);
  }
}

TEST_CASE("ppo updates at the configured cadence") {
  SUBCASE("episode end on cartpole") {
    auto cfg = default_learner_config(LearnerKind::Ppo, envs::Domain::Cartpole);
    auto learner = make_learner(cfg, 4, 2, 3);
    auto& ppo = dynamic_cast<PpoLearner&>(*learner);
    envs::Environment env(default_cartpole());
    Rng er(1);
    auto obs = env.reset(er);
    learner->begin_episode(0);
    int n = 0;
    for (bool end = false; !end; ++n) {
      const auto s = env.step(learner->act(obs), er);
      learner->observe(s.reward, s.obs, s.terminal, s.time_limit);
      end = s.terminal;
      obs = s.obs;
      if (!end) CHECK(learner->updates() == 0);
    }
    CHECK(ppo.rollout_size() == 0);
    CHECK(learner->updates() == 10 * ((n + 33) / 34));
    CHECK(ppo.params().all_finite());
  }
  SUBCASE("every 100 steps on pocman with burn-in") {
    auto cfg = default_learner_config(LearnerKind::PpoLstm, envs::Domain::Pocman);
    auto learner = make_learner(cfg, envs::kPocmanObsDim, envs::kPocmanActions, 3);
    auto& ppo = dynamic_cast<PpoLearner&>(*learner);
    envs::Environment env(pocman_task());
    Rng er(1);
    drive(*learner, env, er, 115);  // 15 burn-in steps, then 100 recorded
    CHECK(ppo.rollout_size() == 0);
    CHECK(learner->updates() == 3 * 3);  // chunks of 34, 34, 32
    CHECK(ppo.params().all_finite());
    const auto p = learner->action_distribution(Observation::Constant(11, -1.0));
    CHECK(p.sum() == doctest::Approx(1.0));
  }
}

TEST_CASE("uniform-random learner and factory") {
  auto learner = make_learner(default_learner_config(LearnerKind::UniformRandom, envs::Domain::Pocman), 11, 5, 4);
  std::vector<int> count(5, 0);
  for (int i = 0; i < 50000; ++i) {
    ++count[learner->act(Observation::Zero(11))];
    learner->observe(0, Observation::Zero(11), false, false);
  }
  for (int n : count) CHECK(std::abs(n / 50000.0 - 0.2) <= 0.01);
  CHECK(learner->action_distribution(Observation::Zero(11)).isApproxToConstant(0.2));
  CHECK(learner->steps() == 50000);
  CHECK(parse_learner_kind("ppo-lstm") == LearnerKind::PpoLstm);
  CHECK_THROWS_AS(parse_learner_kind("a3c"), ConfigError);
  auto cfg = default_learner_config(LearnerKind::Drqn, envs::Domain::Pocman);
  cfg.dqn.replay = ReplayPolicy::Gdm;
  CHECK_THROWS_AS(make_learner(cfg, 11, 5, 1), ConfigError);
  CHECK(default_learner_config(LearnerKind::Ppo, envs::Domain::Pocman).ppo.epochs == 3);
  CHECK(default_learner_config(LearnerKind::Ppo, envs::Domain::Cartpole).ppo.update_every == 0);
}
