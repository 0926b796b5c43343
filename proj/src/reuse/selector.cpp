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

#include "polylife/reuse/selector.hpp"

#include <algorithm>
#include <numeric>

#include "polylife/core/error.hpp"

namespace polylife::reuse {

const char* to_string(TimeUnit u) { return u == TimeUnit::Steps ? "steps" : "episodes"; }

const char* to_string(SelectorMode m) { return m == SelectorMode::Adaptive ? "adaptive" : "unadaptive"; }

SelectorMode parse_selector_mode(const std::string& name) {
  if (name == "adaptive") return SelectorMode::Adaptive;
  if (name == "unadaptive") return SelectorMode::Unadaptive;
  throw ConfigError("unknown selector mode '" + name + "' (adaptive, unadaptive)");
}

void record_outcome(PolicyRecord& record, int task, double episode_return, int steps, TimeUnit unit) {
  auto& s = record.stats.at(static_cast<std::size_t>(task));
  s.cumulative_reward += episode_return;
  s.time_used += unit == TimeUnit::Steps ? steps : 1;
}

int select_policy(int task, const std::vector<PolicyRecord>& library, const SelectorConfig& cfg, Rng& rng) {
  return select_policy(task, library, cfg, rng, nullptr);
}

int select_policy(int task, const std::vector<PolicyRecord>& library, const SelectorConfig& cfg, Rng& rng,
                  bool* explored) {
  if (library.empty()) throw UsageError("select_policy: empty library");
  const int n = static_cast<int>(library.size());
  if (explored) *explored = false;
  if (cfg.mode == SelectorMode::Unadaptive) {
    const int id = cfg.assignment.at(static_cast<std::size_t>(task));
    if (id < 0 || id >= n) throw ConfigError("unadaptive assignment points outside the library");
    return id;
  }
  if (bernoulli(rng, cfg.epsilon)) {
    if (explored) *explored = true;
    return uniform_index(rng, n);
  }
  double best = 0;
  int ties = 0, pick = -1;
  for (int i = 0; i < n; ++i) {
    const auto& s = library[i].stats.at(static_cast<std::size_t>(task));
    if (!s.tried()) continue;
    const double r = s.lifetime_average();
    if (pick < 0 || r > best) {
      best = r;
      pick = i;
      ties = 1;
    } else if (r == best && uniform_index(rng, ++ties) == 0) {
      pick = i;
    }
  }
  return pick >= 0 ? pick : uniform_index(rng, n);
}

std::vector<int> unadaptive_assignment(int n_tau, int n_pi, std::uint64_t seed) {
  if (n_tau < 1 || n_pi < 1 || n_pi > n_tau)
    throw ConfigError("unadaptive assignment needs 1 <= n_pi <= n_tau, got n_pi=" + std::to_string(n_pi) +
                      ", n_tau=" + std::to_string(n_tau));
  std::vector<int> map(static_cast<std::size_t>(n_tau));
  if (n_pi == n_tau) {
    std::iota(map.begin(), map.end(), 0);
    return map;
  }
  std::vector<int> order(map.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng = make_rng(seed, {stream::kAssignment});
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t k = 0; k < order.size(); ++k) map[order[k]] = static_cast<int>(k % n_pi);
  return map;
}

}  // namespace polylife::reuse
