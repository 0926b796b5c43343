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

#include "polylife/metrics/theory.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "polylife/core/error.hpp"

namespace polylife::metrics::theory {

double expected_abs_error(const ScalarFn& policy, const ScalarFn& target, int panels) {
  if (panels < 2 || panels % 2) throw UsageError("Simpson needs an even panel count");
  const double h = 1.0 / panels;
  auto g = [&](double s) { return std::abs(policy(s) - target(s)); };
  double sum = g(0.0) + g(1.0);
  for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * g(i * h);
  return sum * h / 3.0;
}

std::vector<ScalarFn> linear_example_targets() {
  return {[](double s) { return -s * s + 2 * s; }, [](double s) { return s * s; },
          [](double s) { return -0.01 * s * s + 0.02 * s; }, [](double s) { return 0.01 * s * s; }};
}

ScalarFn linear_policy(double slope) {
  return [slope](double s) { return slope * s; };
}

namespace {

double slope_error(const ScalarFn& target, double a) { return expected_abs_error(linear_policy(a), target, 512); }

}  // namespace

std::pair<double, double> feasible_slopes(const ScalarFn& target, double eps) {
  // Minimise over a bracket wide enough for bounded targets on [0, 1].
  double lo = -1e3, hi = 1e3;
  for (int i = 0; i < 200; ++i) {
    const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (slope_error(target, m1) < slope_error(target, m2))
      hi = m2;
    else
      lo = m1;
  }
  const double best = 0.5 * (lo + hi);
  if (slope_error(target, best) > eps) return {1.0, 0.0};
  auto edge = [&](double inside, double outside) {
    for (int i = 0; i < 100; ++i) {
      const double mid = 0.5 * (inside + outside);
      (slope_error(target, mid) <= eps ? inside : outside) = mid;
    }
    return inside;
  };
  return {edge(best, -1e3), edge(best, 1e3)};
}

int min_linear_policies(const std::vector<ScalarFn>& targets, double eps) {
  std::vector<std::pair<double, double>> iv;
  for (const auto& t : targets) {
    const auto r = feasible_slopes(t, eps);
    if (r.first > r.second) throw AnalysisError("a target has no slope within tolerance");
    iv.push_back(r);
  }
  std::sort(iv.begin(), iv.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  int count = 0;
  double stab = -INFINITY;
  for (const auto& [a, b] : iv)
    if (a > stab) {
      stab = b;
      ++count;
    }
  return count;
}

std::vector<ChainTask> chain_example_tasks() { return {{1, 2}, {2, 3}, {3, 4}, {3, 2}, {2, 1}, {1, 0}}; }

std::vector<int> recurrent_states(const ChainTask& task, int n_states) {
  auto next = [&](int s) {
    std::vector<int> out;
    for (int a : {-1, 1}) {
      const int t = std::clamp(s + a, 0, n_states - 1);
      if (t != s && !(s == task.from && t == task.to)) out.push_back(t);
    }
    return out;
  };
  auto reach = [&](int start) {
    std::vector<bool> seen(n_states, false);
    std::vector<int> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      const int s = stack.back();
      stack.pop_back();
      for (int t : next(s))
        if (!seen[t]) stack.push_back(t), seen[t] = true;
    }
    return seen;
  };
  // A state is recurrent when every state it can reach can also return to it.
  const auto from0 = reach(0);
  std::vector<int> out;
  for (int s = 0; s < n_states; ++s) {
    if (!from0[s]) continue;
    const auto rs = reach(s);
    bool closed = true;
    for (int t = 0; t < n_states && closed; ++t)
      if (rs[t] && !reach(t)[s]) closed = false;
    if (closed) out.push_back(s);
  }
  return out;
}

double sweep_reward(int n, int pause) {
  if (n < 1 || pause < 0) throw UsageError("bad sweep length");
  return 0.5 * n * (n - 1) / (n + pause);
}

CapacityBounds chain_capacity_bounds(const std::vector<ChainTask>& tasks, double eps, int n_states) {
  std::set<std::vector<int>> distinct;
  bool some_unserved = false;
  for (const auto& t : tasks) {
    const auto rec = recurrent_states(t, n_states);
    distinct.insert(rec);
    const int n = static_cast<int>(rec.size());
    const double optimal = sweep_reward(n);
    if (optimal - sweep_reward(n, 1) > eps * optimal) some_unserved = true;
  }
  CapacityBounds b;
  b.min_policies = some_unserved ? 2 : 1;
  b.max_policies = static_cast<int>(distinct.size());
  const double n_tau = static_cast<double>(tasks.size());
  b.min_capacity = n_tau / b.max_policies;
  b.max_capacity = n_tau / b.min_policies;
  return b;
}

}  // namespace polylife::metrics::theory
