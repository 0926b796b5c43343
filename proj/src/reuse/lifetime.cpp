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

#include "polylife/reuse/lifetime.hpp"

#include <exception>
#include <string>

#include "polylife/core/error.hpp"
#include "polylife/envs/environment.hpp"
#include "polylife/learners/replay_buffer.hpp"

namespace polylife::reuse {

void RunLog::append(const EpisodeRecord& r) {
  if (!records_.empty()) {
    const auto& last = records_.back();
    if (last.sequence_id == r.sequence_id && r.block_index < last.block_index)
      throw UsageError("RunLog: block index went backwards");
  }
  records_.push_back(r);
}

TimeUnit default_time_unit(envs::Domain d) {
  return d == envs::Domain::Cartpole ? TimeUnit::Steps : TimeUnit::Episodes;
}

std::uint64_t policy_seed(std::uint64_t seed, int sequence_id, int policy_id) {
  return derive_seed(seed, {stream::kPolicy, static_cast<std::uint64_t>(sequence_id),
                            static_cast<std::uint64_t>(policy_id)});
}

namespace {

Rng env_rng(std::uint64_t seed, int sequence_id) {
  return make_rng(seed, {stream::kEnvironment, static_cast<std::uint64_t>(sequence_id)});
}

struct EpisodeOutcome {
  double ret = 0;
  int steps = 0;
};

template <typename OnObs>
EpisodeOutcome run_episode(learners::Learner& learner, envs::Environment& env, int task, Rng& rng, OnObs&& on_obs) {
  EpisodeOutcome out;
  envs::Observation obs = env.reset(rng);
  on_obs(obs);
  learner.begin_episode(task);
  for (bool done = false; !done;) {
    const auto s = env.step(learner.act(obs), rng);
    learner.observe(s.reward, s.obs, s.terminal, s.time_limit);
    out.ret += s.reward;
    ++out.steps;
    done = s.terminal;
    obs = s.obs;
    if (!done) on_obs(obs);
  }
  return out;
}

[[noreturn]] void rethrow_with_context(const std::string& where) {
  try {
    throw;
  } catch (const ConfigError& e) {
    throw ConfigError(where + ": " + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(where + ": " + e.what());
  } catch (const UsageError& e) {
    throw UsageError(where + ": " + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(where + ": " + e.what());
  }
}

void check_sequence(const std::vector<envs::TaskSpec>& tasks, const envs::TaskSequence& sequence) {
  if (tasks.empty()) throw ConfigError("run needs at least one task");
  for (const auto& b : sequence.blocks) {
    if (b.task_index < 0 || b.task_index >= static_cast<int>(tasks.size()))
      throw ConfigError("sequence refers to task " + std::to_string(b.task_index) + " outside the domain");
    if (b.length <= 0) throw ConfigError("block length must be positive");
  }
}

}  // namespace

LifetimeResult run_lifetime(const std::vector<envs::TaskSpec>& tasks, const envs::TaskSequence& sequence,
                            const LifetimeConfig& cfg, const EpisodeSink& sink) {
  check_sequence(tasks, sequence);
  const int n_tau = static_cast<int>(tasks.size());
  if (cfg.n_policies < 1) throw ConfigError("library needs at least one policy");
  const envs::Domain domain = tasks.front().domain();
  const int obs_dim = envs::observation_dim(domain), n_actions = envs::action_count(domain);

  SelectorConfig selector = cfg.selector;
  if (selector.mode == SelectorMode::Unadaptive) {
    if (selector.assignment.empty()) selector.assignment = unadaptive_assignment(n_tau, cfg.n_policies, cfg.seed);
    if (static_cast<int>(selector.assignment.size()) != n_tau)
      throw ConfigError("unadaptive assignment must cover every task");
  } else if (selector.epsilon < 0 || selector.epsilon > 1) {
    throw ConfigError("selector epsilon must be in [0, 1]");
  }

  learners::LearnerConfig lc = cfg.learner;
  if (lc.dqn.replay == learners::ReplayPolicy::TaskMatching) lc.dqn.n_tasks = n_tau;

  LifetimeResult result;
  result.library.reserve(static_cast<std::size_t>(cfg.n_policies));
  for (int i = 0; i < cfg.n_policies; ++i)
    result.library.emplace_back(
        i, learners::make_learner(lc, obs_dim, n_actions, policy_seed(cfg.seed, sequence.sequence_id, i)), n_tau);

  Rng erng = env_rng(cfg.seed, sequence.sequence_id);
  Rng srng = make_rng(cfg.seed, {stream::kSelector, static_cast<std::uint64_t>(sequence.sequence_id)});
  learners::FifoStore<envs::Observation> recent(static_cast<std::size_t>(std::max(cfg.spread_window, 1)));
  auto keep = [&recent](const envs::Observation& o) { recent.push(o); };

  std::int64_t episode_index = 0;
  for (std::size_t b = 0; b < sequence.blocks.size(); ++b) {
    const auto& block = sequence.blocks[b];
    try {
      envs::Environment env(tasks[block.task_index]);
      std::vector<bool> used(result.library.size(), false);
      for (std::int64_t spent = 0; spent < block.length;) {
        bool explored = false;
        const int pid = select_policy(block.task_index, result.library, selector, srng, &explored);
        ++result.selections;
        result.explorations += explored;
        auto& record = result.library[pid];
        const auto ep = run_episode(*record.learner, env, block.task_index, erng, keep);
        record_outcome(record, block.task_index, ep.ret, ep.steps, cfg.unit);
        if (!used[pid]) {
          ++record.stats[block.task_index].blocks_seen;
          used[pid] = true;
        }
        const EpisodeRecord row{sequence.sequence_id, static_cast<int>(b), episode_index++, block.task_index,
                                pid, ep.ret, ep.steps};
        result.log.append(row);
        if (sink) sink(row);
        result.total_steps += ep.steps;
        spent += cfg.unit == TimeUnit::Steps ? ep.steps : 1;
      }
    } catch (...) {
      rethrow_with_context("sequence " + std::to_string(sequence.sequence_id) + ", block " + std::to_string(b) +
                           " (task " + std::to_string(block.task_index) + ")");
    }
  }

  if (recent.size() > 0 && cfg.spread_samples > 0) {
    Rng rng = make_rng(cfg.seed, {stream::kSpread, static_cast<std::uint64_t>(sequence.sequence_id)});
    for (int i = 0; i < cfg.spread_samples; ++i)
      result.spread_sample.push_back(recent.at(static_cast<std::size_t>(uniform_index(rng, static_cast<int>(recent.size())))));
  }
  return result;
}

RunLog run_single_learner(const std::vector<envs::TaskSpec>& tasks, const envs::TaskSequence& sequence,
                          const learners::LearnerConfig& learner, TimeUnit unit, std::uint64_t seed) {
  check_sequence(tasks, sequence);
  const envs::Domain domain = tasks.front().domain();
  learners::LearnerConfig lc = learner;
  if (lc.dqn.replay == learners::ReplayPolicy::TaskMatching) lc.dqn.n_tasks = static_cast<int>(tasks.size());
  auto agent = learners::make_learner(lc, envs::observation_dim(domain), envs::action_count(domain),
                                      policy_seed(seed, sequence.sequence_id, 0));
  Rng erng = env_rng(seed, sequence.sequence_id);
  RunLog log;
  std::int64_t episode_index = 0;
  for (std::size_t b = 0; b < sequence.blocks.size(); ++b) {
    const auto& block = sequence.blocks[b];
    envs::Environment env(tasks[block.task_index]);
    for (std::int64_t spent = 0; spent < block.length;) {
      const auto ep = run_episode(*agent, env, block.task_index, erng, [](const envs::Observation&) {});
      log.append({sequence.sequence_id, static_cast<int>(b), episode_index++, block.task_index, 0, ep.ret, ep.steps});
      spent += unit == TimeUnit::Steps ? ep.steps : 1;
    }
  }
  return log;
}

}  // namespace polylife::reuse
