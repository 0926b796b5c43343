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


#include "doctest.h"

#include <cmath>
#include <sstream>

#include "polylife/core/error.hpp"
#include "polylife/memsim/memsim.hpp"

using namespace polylife;
using namespace polylife::memsim;

namespace {

// P(lo <= K <= hi) for K ~ Binomial(n, q), summed in log space.
double binom_range(int n, double q, int lo, int hi) {
  double s = 0;
  for (int k = lo; k <= hi && k <= n; ++k)
    s += std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * std::log(q) +
                  (n - k) * std::log1p(-q));
  return s;
}

MemSimConfig config(double c, int tc, double p, int blocks = 3000) {
  MemSimConfig cfg;
  cfg.task_capacity = c;
  cfg.blocks_to_convergence = tc;
  cfg.acceptance_probability = p;
  cfg.n_blocks = blocks;
  return cfg;
}

}  // namespace

TEST_CASE("baseline is the constant fixed library size") {
  const auto rows = simulate_memory(config(2, 4, 0.5, 200));
  for (const auto& r : rows) CHECK(r.baseline == 500);
  CHECK(simulate_memory(config(3, 4, 0.5, 5)).front().baseline == 334);
}

TEST_CASE("nothing accepted leaves the library empty") {
  const auto rows = simulate_memory(config(5, 1, 0.0, 500));
  for (const auto& r : rows) {
    CHECK(r.mean_library == 0);
    CHECK(r.mean_total == r.mean_temporary);
  }
  for (const auto& r : simulate_memory(config(5, 3, 0.0, 500))) CHECK(r.mean_library == 0);
}

TEST_CASE("mean counts match the binomial visit model") {
  for (double p : {0.25, 1.0})
    for (int tc : {2, 4}) {
      const auto cfg = config(5, tc, p, 2500);
      const auto rows = simulate_memory(cfg);
      const double q = 1.0 / cfg.n_tau;
      for (int b : {100, 999, 2499}) {
        const int visits = b + 1;
        const double temp = cfg.n_tau * binom_range(visits, q, 1, tc - 1);
        const double lib = p * cfg.n_tau * (1 - binom_range(visits, q, 0, tc - 1));
        CHECK(rows[b].mean_temporary == doctest::Approx(temp).epsilon(0.05));
        // Library counts are small early on; compare in absolute terms there.
        CHECK(std::abs(rows[b].mean_library - lib) <= std::max(0.05 * lib, 5 * rows[b].stderr_total + 1));
      }
    }
}

TEST_CASE("mean total is non-decreasing in acceptance and convergence time") {
  auto check = [](const std::vector<MemSimRow>& lo, const std::vector<MemSimRow>& hi) {
    for (std::size_t b = 99; b < lo.size(); b += 100) {
      const double sigma = std::hypot(lo[b].stderr_total, hi[b].stderr_total);
      CHECK(hi[b].mean_total >= lo[b].mean_total - 3 * sigma);
    }
  };
  check(simulate_memory(config(5, 4, 0.25)), simulate_memory(config(5, 4, 0.5)));
  check(simulate_memory(config(5, 4, 0.5)), simulate_memory(config(5, 4, 1.0)));
  check(simulate_memory(config(5, 2, 0.5)), simulate_memory(config(5, 4, 0.5)));
  check(simulate_memory(config(5, 4, 0.5)), simulate_memory(config(5, 8, 0.5)));
}

TEST_CASE("dynamic scheme peaks at least three times the fixed library") {
  double best = 0;
  for (double p : {0.25, 0.5, 1.0}) {
    auto cfg = config(5, 4, p, 10000);
    for (const auto& r : simulate_memory(cfg)) best = std::max(best, r.mean_total / r.baseline);
  }
  CHECK(best >= 3.0);
}

TEST_CASE("determinism, validation and CSV") {
  const auto a = simulate_memory(config(5, 4, 0.5, 100));
  const auto b = simulate_memory(config(5, 4, 0.5, 100));
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].mean_total == b[i].mean_total);
  CHECK_THROWS_AS(simulate_memory(config(0.5, 4, 0.5)), ConfigError);
  CHECK_THROWS_AS(simulate_memory(config(5, 0, 0.5)), ConfigError);
  CHECK_THROWS_AS(simulate_memory(config(5, 4, 1.5)), ConfigError);
  std::ostringstream out;
  write_memsim_csv(out, simulate_memory(config(5, 4, 0.5, 2)));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "block_index,mean_library,mean_temporary,mean_total,baseline");
  int n = 0;
  while (std::getline(in, line)) ++n;
  CHECK(n == 2);
}
