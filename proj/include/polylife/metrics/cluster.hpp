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

#include "polylife/envs/task.hpp"

namespace polylife::metrics {

/// Pre-termination summary of one cartpole task under a random policy.
struct ClusterPoint {
  int task_index = 0;
  double boundary_theta_dot = 0;  // rad/s
  double mean_episode_length = 0;
};

enum class BoundaryScale { Linear, Log };

struct Cluster {
  std::vector<int> task_indices;
  double mean_boundary_theta_dot = 0;
  double mean_episode_length = 0;
};

/// Single-linkage grouping: two points share a cluster when a chain of
/// neighbours closer than `threshold` joins them. Each axis is min-max scaled
/// to [0, 1]; with BoundaryScale::Log the boundary axis is log-transformed
/// first, since boundaries span an order of magnitude.
std::vector<Cluster> cluster_tasks(const std::vector<ClusterPoint>& points, double threshold,
                                   BoundaryScale scale = BoundaryScale::Log);

/// Random-policy rollouts of `steps` steps per task.
std::vector<ClusterPoint> cluster_points(const std::vector<envs::TaskSpec>& tasks, std::int64_t steps,
                                         std::uint64_t seed);

inline double theoretical_capacity(int n_tau, std::size_t n_clusters) {
  return static_cast<double>(n_tau) / static_cast<double>(n_clusters);
}

}  // namespace polylife::metrics
