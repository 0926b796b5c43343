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
#include <vector>

#include "polylife/core/random.hpp"
#include "polylife/learners/learner.hpp"

namespace polylife::reuse {

/// Unit in which a policy's time on a task is counted, and in which block
/// lengths are expressed.
enum class TimeUnit { Steps, Episodes };

const char* to_string(TimeUnit u);

struct TaskStats {
  double cumulative_reward = 0;
  std::int64_t time_used = 0;  // t_ij in TimeUnit
  int blocks_seen = 0;

  bool tried() const { return time_used > 0; }
  /// Running lifetime average; only meaningful once tried().
  double lifetime_average() const { return cumulative_reward / static_cast<double>(time_used); }
};

struct PolicyRecord {
  int policy_id = 0;
  learners::LearnerPtr learner;
  std::vector<TaskStats> stats;  // indexed by task

  PolicyRecord(int id, learners::LearnerPtr l, int n_tasks) : policy_id(id), learner(std::move(l)), stats(n_tasks) {}
};

void record_outcome(PolicyRecord& record, int task, double episode_return, int steps, TimeUnit unit);

enum class SelectorMode { Adaptive, Unadaptive };

const char* to_string(SelectorMode m);
SelectorMode parse_selector_mode(const std::string& name);

struct SelectorConfig {
  SelectorMode mode = SelectorMode::Adaptive;
  double epsilon = 0.10;
  std::vector<int> assignment;  // task -> policy, unadaptive only
};

/// Unadaptive: the fixed assignment, no randomness consumed. Adaptive: an
/// exploration coin with probability epsilon picks a uniform policy (the best
/// included); otherwise the highest lifetime average on the task among tried
/// policies, ties uniform, or a uniform pick when none has been tried.
int select_policy(int task, const std::vector<PolicyRecord>& library, const SelectorConfig& cfg, Rng& rng);

/// Adaptive selection that also reports whether the exploration branch fired.
int select_policy(int task, const std::vector<PolicyRecord>& library, const SelectorConfig& cfg, Rng& rng,
                  bool* explored);

/// Balanced task-to-policy map. Tasks are shuffled by `seed` and dealt
/// round-robin; n_pi == n_tau gives the identity map.
std::vector<int> unadaptive_assignment(int n_tau, int n_pi, std::uint64_t seed);

}  // namespace polylife::reuse
