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

#include "polylife/learners/gae.hpp"

#include "polylife/core/error.hpp"

namespace polylife::learners {

GaeResult gae_advantages(const std::vector<double>& rewards, const std::vector<double>& values,
                         const std::vector<bool>& terminals, double gamma, double lambda) {
  const std::size_t n = rewards.size();
  if (values.size() != n + 1 || terminals.size() != n)
    throw ConfigError("gae: need |values| = |rewards| + 1 and |terminals| = |rewards|");
  if (gamma < 0 || gamma > 1 || lambda < 0 || lambda > 1) throw ConfigError("gae: gamma and lambda must be in [0, 1]");
  GaeResult out{std::vector<double>(n), std::vector<double>(n)};
  double running = 0;
  for (std::size_t t = n; t-- > 0;) {
    const double keep = terminals[t] ? 0.0 : 1.0;
    const double delta = rewards[t] + gamma * values[t + 1] * keep - values[t];
    running = delta + gamma * lambda * keep * running;
    out.advantages[t] = running;
    out.returns[t] = running + values[t];
  }
  return out;
}

}  // namespace polylife::learners
