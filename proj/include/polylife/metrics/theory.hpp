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

#include <functional>
#include <utility>
#include <vector>

// Worked examples of representational task capacity.
namespace polylife::metrics::theory {

using ScalarFn = std::function<double(double)>;

/// E|policy(s) - target(s)| for s ~ U[0, 1], composite Simpson over `panels`.
double expected_abs_error(const ScalarFn& policy, const ScalarFn& target, int panels = 4096);

// Linear approximators pi(s) = A s against four quadratic targets.

std::vector<ScalarFn> linear_example_targets();
ScalarFn linear_policy(double slope);

/// Interval of slopes A whose expected error on `target` is at most `eps`.
/// Empty (first > second) when no slope qualifies. The error is convex in A.
std::pair<double, double> feasible_slopes(const ScalarFn& target, double eps);

/// Fewest linear policies covering every target within `eps`; greedy interval
/// stabbing is exact in one dimension. Throws AnalysisError when some target
/// has no feasible slope.
int min_linear_policies(const std::vector<ScalarFn>& targets, double eps);

// Chain tasks on states 0..n-1 with actions -1/+1, starting at 0, where one
// transition i -> j is removed.

struct ChainTask {
  int from = 0;
  int to = 0;
};

std::vector<ChainTask> chain_example_tasks();

/// States visited repeatedly once the agent settles: the closed strongly
/// connected component reachable from state 0.
std::vector<int> recurrent_states(const ChainTask& task, int n_states = 5);

/// Average per-step reward of sweeping a path of `n` states, optionally
/// pausing `pause` steps per sweep: (0 + 1 + ... + n-1) / (n + pause).
double sweep_reward(int n, int pause = 0);

struct CapacityBounds {
  int min_policies = 0;
  int max_policies = 0;
  double min_capacity = 0;
  double max_capacity = 0;
};

/// Bounds on the policy count for the chain tasks. A policy that reverses on
/// a repeated state serves every task whose pause penalty stays within
/// `eps` of optimal; the remaining tasks need at least one more policy. One
/// dedicated policy per distinct recurrent set is always enough.
CapacityBounds chain_capacity_bounds(const std::vector<ChainTask>& tasks, double eps, int n_states = 5);

}  // namespace polylife::metrics::theory
