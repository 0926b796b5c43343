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

#include <vector>

#include <Eigen/Core>

#include "polylife/envs/task.hpp"
#include "polylife/reuse/selector.hpp"

namespace polylife::metrics {

/// Total variation distance between two distributions over the same support.
double total_variation(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

/// Mean pairwise TV distance. `dists[policy][sample]` holds action distributions.
double policy_spread(const std::vector<std::vector<Eigen::VectorXd>>& dists);

/// Spread of a policy library over an observation sample. DQN policies use
/// their epsilon-greedy distribution, PPO policies the actor softmax.
/// Throws UsageError with fewer than two policies or an empty sample.
double policy_spread(const std::vector<reuse::PolicyRecord>& library, const std::vector<envs::Observation>& sample);

}  // namespace polylife::metrics
