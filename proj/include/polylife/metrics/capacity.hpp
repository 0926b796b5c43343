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

#include <string>
#include <vector>

namespace polylife::metrics {

struct CapacityEntry {
  int n_policies = 0;
  double lifetime_average = 0;
};

/// Lifetime averages per library size for one base-learner. The 1-to-1 entry
/// is the one whose library size equals the task count.
struct CapacityTable {
  std::vector<CapacityEntry> entries;
  int one_to_one_policies = 0;

  double reference() const;  // throws AnalysisError without a 1-to-1 entry
};

struct CapacityResult {
  double capacity = 0;
  int n_pi_star = 0;
};

/// Smallest library whose lifetime average reaches (1 - eps) of the 1-to-1
/// reference; falls back to the 1-to-1 size.
CapacityResult empirical_task_capacity(const CapacityTable& table, int n_tau, double eps);

/// Exact integral of the empirical capacity over eps in [0, 1].
double integrated_task_capacity(const CapacityTable& table, int n_tau);

/// CSV with header `n_policies,lifetime_average`.
CapacityTable parse_capacity_table(const std::string& text, int n_tau);
CapacityTable load_capacity_table(const std::string& path, int n_tau);

}  // namespace polylife::metrics
