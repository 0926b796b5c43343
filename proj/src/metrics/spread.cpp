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

#include "polylife/metrics/spread.hpp"

#include "polylife/core/error.hpp"

namespace polylife::metrics {

double total_variation(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  if (p.size() != q.size()) throw UsageError("distributions differ in support size");
  return 0.5 * (p - q).cwiseAbs().sum();
}

double policy_spread(const std::vector<std::vector<Eigen::VectorXd>>& dists) {
  if (dists.size() < 2) throw UsageError("policy spread needs at least two policies");
  const std::size_t n = dists.front().size();
  if (n == 0) throw UsageError("policy spread needs a non-empty observation sample");
  double sum = 0;
  long pairs = 0;
  for (std::size_t i = 0; i < dists.size(); ++i)
    for (std::size_t j = i + 1; j < dists.size(); ++j) {
      if (dists[i].size() != n || dists[j].size() != n) throw UsageError("ragged distribution table");
      for (std::size_t k = 0; k < n; ++k) sum += total_variation(dists[i][k], dists[j][k]);
      pairs += static_cast<long>(n);
    }
  return sum / static_cast<double>(pairs);
}

double policy_spread(const std::vector<reuse::PolicyRecord>& library, const std::vector<envs::Observation>& sample) {
  if (library.size() < 2) throw UsageError("policy spread needs at least two policies");
  if (sample.empty()) throw UsageError("policy spread needs a non-empty observation sample");
  std::vector<std::vector<Eigen::VectorXd>> dists(library.size());
  for (std::size_t i = 0; i < library.size(); ++i) {
    dists[i].reserve(sample.size());
    for (const auto& o : sample) dists[i].push_back(library[i].learner->action_distribution(o));
  }
  return policy_spread(dists);
}

}  // namespace polylife::metrics
