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

#include "polylife/metrics/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "polylife/core/error.hpp"
#include "polylife/core/random.hpp"
#include "polylife/envs/rollout.hpp"

namespace polylife::metrics {

namespace {

std::vector<double> min_max(std::vector<double> v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double a = *lo, span = *hi - *lo;
  for (double& x : v) x = span > 0 ? (x - a) / span : 0.0;
  return v;
}

int find(std::vector<int>& parent, int i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

}  // namespace

std::vector<Cluster> cluster_tasks(const std::vector<ClusterPoint>& points, double threshold, BoundaryScale scale) {
  if (points.empty()) throw UsageError("clustering needs at least one point");
  const std::size_t n = points.size();
  std::vector<double> bx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = points[i];
    if (!(p.boundary_theta_dot > 0) || !(p.mean_episode_length > 0))
      throw AnalysisError("cluster point for task " + std::to_string(p.task_index) + " has a non-positive coordinate");
    bx[i] = scale == BoundaryScale::Log ? std::log(p.boundary_theta_dot) : p.boundary_theta_dot;
    ly[i] = p.mean_episode_length;
  }
  bx = min_max(std::move(bx));
  ly = min_max(std::move(ly));

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::hypot(bx[i] - bx[j], ly[i] - ly[j]) <= threshold)
        parent[find(parent, static_cast<int>(i))] = find(parent, static_cast<int>(j));

  std::map<int, Cluster> groups;  // keyed by root, ordered by first member below
  std::vector<int> order;
  for (std::size_t i = 0; i < n; ++i) {
    const int r = find(parent, static_cast<int>(i));
    if (!groups.count(r)) order.push_back(r);
    auto& c = groups[r];
    c.task_indices.push_back(points[i].task_index);
    c.mean_boundary_theta_dot += points[i].boundary_theta_dot;
    c.mean_episode_length += points[i].mean_episode_length;
  }
  std::vector<Cluster> out;
  for (int r : order) {
    Cluster c = groups[r];
    const double k = static_cast<double>(c.task_indices.size());
    c.mean_boundary_theta_dot /= k;
    c.mean_episode_length /= k;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<ClusterPoint> cluster_points(const std::vector<envs::TaskSpec>& tasks, std::int64_t steps,
                                         std::uint64_t seed) {
  std::vector<ClusterPoint> out;
  for (const auto& t : tasks) {
    Rng rng = make_rng(seed, {static_cast<std::uint64_t>(t.task_index)});
    const auto stats = envs::random_policy_rollout(t, steps, rng);
    out.push_back({t.task_index, stats.boundary_theta_dot(), stats.mean_angle_episode_length()});
  }
  return out;
}

}  // namespace polylife::metrics
