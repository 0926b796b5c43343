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
#include <functional>
#include <vector>

#include "polylife/envs/sequence.hpp"
#include "polylife/envs/task.hpp"
#include "polylife/learners/factory.hpp"
#include "polylife/reuse/selector.hpp"

namespace polylife::reuse {

struct EpisodeRecord {
  int sequence_id = 0;
  int block_index = 0;
  std::int64_t episode_index = 0;  // counts across the whole sequence
  int task_index = 0;
  int policy_id = 0;
  double episode_return = 0;
  int steps = 0;
};

/// Append-only episode log of one or more sequences.
class RunLog {
 public:
  void append(const EpisodeRecord& r);
  const std::vector<EpisodeRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

 private:
  std::vector<EpisodeRecord> records_;
};

struct LifetimeConfig {
  int n_policies = 1;
  SelectorConfig selector;  // unadaptive assignment is filled in when empty
  learners::LearnerConfig learner;
  TimeUnit unit = TimeUnit::Steps;
  std::uint64_t seed = 1;
  int spread_samples = 1000;
  int spread_window = 100000;
};

struct LifetimeResult {
  RunLog log;
  std::vector<PolicyRecord> library;
  std::vector<envs::Observation> spread_sample;  // uniform draw from recent observations
  std::int64_t total_steps = 0;
  std::int64_t explorations = 0;  // adaptive exploration branches taken
  std::int64_t selections = 0;
};

using EpisodeSink = std::function<void(const EpisodeRecord&)>;

/// Default time unit for a domain: steps for cartpole, episodes for POcman.
TimeUnit default_time_unit(envs::Domain d);

/// Runs one task sequence with a fixed library of policies. Each block runs
/// whole episodes until its length (in `cfg.unit`) is used up; the policy is
/// chosen at every episode start and learns only from its own episodes.
/// Errors are rethrown with the sequence and block attached.
LifetimeResult run_lifetime(const std::vector<envs::TaskSpec>& tasks, const envs::TaskSequence& sequence,
                            const LifetimeConfig& cfg, const EpisodeSink& sink = {});

/// A single base-learner on the same sequence, without any selector. Uses the
/// same random streams as policy 0 of run_lifetime.
RunLog run_single_learner(const std::vector<envs::TaskSpec>& tasks, const envs::TaskSequence& sequence,
                          const learners::LearnerConfig& learner, TimeUnit unit, std::uint64_t seed);

std::uint64_t policy_seed(std::uint64_t seed, int sequence_id, int policy_id);

}  // namespace polylife::reuse
