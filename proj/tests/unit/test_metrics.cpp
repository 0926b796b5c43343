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

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "polylife/core/error.hpp"
#include "polylife/core/random.hpp"
#include "polylife/envs/task.hpp"
#include "polylife/metrics/capacity.hpp"
#include "polylife/metrics/cluster.hpp"
#include "polylife/metrics/ratios.hpp"
#include "polylife/metrics/spread.hpp"
#include "polylife/metrics/theory.hpp"

using namespace polylife;
using namespace polylife::metrics;

namespace {

CapacityTable table_of(std::vector<std::pair<int, double>> rows, int n_tau) {
  CapacityTable t;
  t.one_to_one_policies = n_tau;
  for (auto [n, r] : rows) t.entries.push_back({n, r});
  return t;
}

const CapacityTable kDqn = table_of({{1, 71.8}, {2, 118.8}, {4, 156.2}, {9, 161.5}, {14, 155.8}, {27, 147.9}}, 27);
const CapacityTable kPpo = table_of({{1, 67.7}, {2, 78.1}, {4, 80.2}, {9, 80.5}, {14, 75.5}, {27, 68.5}}, 27);

// Direct scan: no sorting, no shortcut.
double brute_capacity(const CapacityTable& t, int n_tau, double eps) {
  double ref = 0;
  for (const auto& e : t.entries)
    if (e.n_policies == n_tau) ref = e.lifetime_average;
  int best = n_tau;
  for (const auto& e : t.entries)
    if (e.lifetime_average >= (1 - eps) * ref && e.n_policies < best) best = e.n_policies;
  return double(n_tau) / best;
}

double riemann_itc(const CapacityTable& t, int n_tau, int n = 200000) {
  double s = 0;
  for (int i = 0; i < n; ++i) s += brute_capacity(t, n_tau, (i + 0.5) / n);
  return s / n;
}

// One block of `episodes` episodes with the given returns.
void add_block(reuse::RunLog& log, int seq, int block, int task, std::vector<double> returns) {
  static std::int64_t ep = 0;
  for (double r : returns) log.append({seq, block, ep++, task, 0, r, 10});
}

}  // namespace

TEST_CASE("forgetting ratio arithmetic") {
  BlockArea prev{0, 3, 0, 20.0, 2, 0}, cur{0, 3, 4, 10.0, 2, 1};  // means 10 and 5
  CHECK(forgetting_ratio(cur, prev, -5.0, 10.0) == doctest::Approx(0.0));
  CHECK(forgetting_ratio(cur, prev, 0.0, 10.0) == doctest::Approx(-0.5));
  BlockArea wrong = cur;
  wrong.task_index = 4;
  CHECK_THROWS_AS(forgetting_ratio(wrong, prev, 0.0, 10.0), UsageError);
  CHECK_THROWS_AS(forgetting_ratio(cur, prev, 0.0, 0.0), AnalysisError);
}

TEST_CASE("transfer ratio arithmetic and first-presentation guard") {
  BlockArea first{0, 1, 0, 30.0, 1, 0};
  CHECK(transfer_ratio(first, 30.0, 10.0) == doctest::Approx(0.0));
  CHECK(transfer_ratio(first, 10.0, 10.0) == doctest::Approx(2.0));
  BlockArea later = first;
  later.presentation = 1;
  CHECK_THROWS_AS(transfer_ratio(later, 10.0, 10.0), UsageError);
}

TEST_CASE("ratios are invariant under a common rescaling") {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(1, 100);
  for (int i = 0; i < 100; ++i) {
    const double k = u(g) / 10;
    BlockArea p{0, 0, 0, u(g), 3, 0}, c{0, 0, 5, u(g), 4, 1};
    const double d1 = u(g) - 50, ua = u(g);
    BlockArea ps = p, cs = c;
    ps.area *= k;
    cs.area *= k;
    CHECK(forgetting_ratio(cs, ps, k * d1, k * ua) == doctest::Approx(forgetting_ratio(c, p, d1, ua)));
    BlockArea f = p;
    BlockArea fs = ps;
    CHECK(transfer_ratio(fs, k * d1, k * ua) == doctest::Approx(transfer_ratio(f, d1, ua)));
  }
}

TEST_CASE("block areas group episodes and count presentations") {
  reuse::RunLog log;
  add_block(log, 0, 0, 2, {1, 2, 3});
  add_block(log, 0, 1, 5, {4});
  add_block(log, 0, 2, 2, {6, 8});
  add_block(log, 1, 0, 2, {7});
  const auto b = block_areas(log);
  REQUIRE(b.size() == 4);
  CHECK(b[0].area == 6);
  CHECK(b[0].episodes == 3);
  CHECK(b[2].presentation == 1);
  CHECK(b[2].mean() == 7);
  CHECK(b[3].presentation == 0);
}

TEST_CASE("forgetting bins match a hand-computed fixture") {
  CHECK(forgetting_bin(0) == 0);
  CHECK(forgetting_bin(1) == 1);
  CHECK(forgetting_bin(9) == 1);
  CHECK(forgetting_bin(10) == 2);
  CHECK(forgetting_bin(29) == 3);
  CHECK(forgetting_bin(30) == 4);
  CHECK(forgetting_bin(500) == 4);

  // Task 0 at blocks 0, 1, 3, 35; task 1 fills the gaps. Uniform areas 10.
  reuse::RunLog cond, ref;
  std::vector<int> task(36, 1);
  task[0] = task[1] = task[3] = task[35] = 0;
  std::map<int, double> cond_mean{{0, 100}, {1, 120}, {3, 90}, {35, 40}};
  std::map<int, double> ref_mean{{0, 100}, {1, 110}, {3, 130}, {35, 150}};
  for (int b = 0; b < 36; ++b) {
    add_block(cond, 0, b, task[b], {task[b] == 0 ? cond_mean[b] : 50.0, task[b] == 0 ? cond_mean[b] : 50.0});
    add_block(ref, 0, b, task[b], {task[b] == 0 ? ref_mean[b] : 50.0});
  }
  const auto bins = forgetting_by_interference(cond, ref, {10.0, 10.0});
  // Task 0: gap 0 -> (20-10)/10 = 1; gap 1 -> (-30-20)/10 = -5; gap 31 -> (-50-20)/10 = -7.
  CHECK(bins[1].count == 2);  // task 0 across block 2, task 1 across block 3
  CHECK(bins[4].count == 1);
  CHECK(bins[4].mean == doctest::Approx(-7.0));
  // Task 1 consecutive blocks have equal means in both logs: ratio 0.
  int zero_gap_task1 = 0;
  for (int b = 5; b < 35; ++b) zero_gap_task1 += (task[b] == 1 && task[b - 1] == 1);
  CHECK(bins[0].count == 1 + zero_gap_task1);
  CHECK(bins[0].mean == doctest::Approx(1.0 / bins[0].count));
  CHECK(bins[1].mean == doctest::Approx(-5.0 / bins[1].count));

  reuse::RunLog missing;
  add_block(missing, 3, 0, 0, {1});
  add_block(missing, 3, 1, 0, {1});
  CHECK_THROWS_AS(forgetting_by_interference(missing, ref, {10.0, 10.0}), AnalysisError);
}

TEST_CASE("transfer summary is positive when the reuse policy starts pre-trained") {
  reuse::RunLog cond, ref;
  for (int t = 0; t < 4; ++t) {
    add_block(cond, 0, t, t, {t == 0 ? 20.0 : 80.0});
    add_block(ref, 0, t, t, {20.0});
  }
  const auto s = transfer_summary(cond, ref, {10, 10, 10, 10});
  CHECK(s.count == 4);
  CHECK(s.mean == doctest::Approx((0 + 6 + 6 + 6) / 4.0));
  CHECK(s.mean > 0);
  CHECK(s.stderr_ == doctest::Approx(std::sqrt(9.0 / 4.0)));  // sample sd 3, n 4
}

TEST_CASE("uniform-random block areas are positive and deterministic") {
  const auto tasks = envs::make_cartpole_domain(27);
  const std::vector<envs::TaskSpec> few(tasks.begin(), tasks.begin() + 3);
  const auto a = uniform_random_areas(few, 2000, reuse::TimeUnit::Steps, 9);
  const auto b = uniform_random_areas(few, 2000, reuse::TimeUnit::Steps, 9);
  REQUIRE(a.size() == 3);
  CHECK(a == b);
  for (double v : a) {
    CHECK(v > 5);
    CHECK(v < 200);
  }
}

TEST_CASE("total variation and policy spread") {
  using Eigen::VectorXd;
  VectorXd p(2), q(2);
  p << 0.9, 0.1;
  q << 0.1, 0.9;
  CHECK(total_variation(p, q) == doctest::Approx(0.8));
  CHECK(policy_spread({{p, p}, {q, q}}) == doctest::Approx(0.8));
  CHECK(policy_spread({{p, q}, {p, q}}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(policy_spread({{p}}), UsageError);

  std::mt19937_64 g(3);
  std::gamma_distribution<double> gam(1.0);
  auto draw = [&] {
    VectorXd v(5);
    for (int i = 0; i < 5; ++i) v[i] = gam(g);
    return VectorXd(v / v.sum());
  };
  for (int i = 0; i < 200; ++i) {
    const VectorXd a = draw(), b = draw();
    const double d = total_variation(a, b);
    CHECK(d >= 0);
    CHECK(d <= 1 + 1e-12);
    CHECK(d == doctest::Approx(total_variation(b, a)));
    CHECK(total_variation(a, a) == 0);
    // Oracle: TV = max over events of |P(E) - Q(E)|.
    double best = 0;
    for (int mask = 0; mask < 32; ++mask) {
      double s = 0;
      for (int k = 0; k < 5; ++k)
        if (mask >> k & 1) s += a[k] - b[k];
      best = std::max(best, std::abs(s));
    }
    CHECK(d == doctest::Approx(best));
  }
}

TEST_CASE("policy spread over a learner library") {
  const auto domain = envs::make_cartpole_domain(27);
  auto cfg = learners::default_learner_config(learners::LearnerKind::Dqn, envs::Domain::Cartpole);
  std::vector<reuse::PolicyRecord> lib;
  for (int i = 0; i < 3; ++i)
    lib.emplace_back(i, learners::make_learner(cfg, envs::kCartpoleObsDim, envs::kCartpoleActions, 100 + i), 27);
  std::vector<envs::Observation> sample;
  Rng rng = make_rng(1, {});
  for (int i = 0; i < 50; ++i) {
    envs::Observation o(4);
    for (int k = 0; k < 4; ++k) o[k] = uniform01(rng) - 0.5;
    sample.push_back(o);
  }
  // Oracle: every pair of epsilon-greedy distributions over 2 actions is either
  // identical (TV 0) or has opposite argmax (TV 1 - eps).
  double expect = 0;
  int pairs = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      for (const auto& o : sample) {
        const auto a = lib[i].learner->action_distribution(o), b = lib[j].learner->action_distribution(o);
        int ai, bi;
        a.maxCoeff(&ai);
        b.maxCoeff(&bi);
        expect += ai == bi ? 0.0 : 1.0 - cfg.dqn.exploration;
        ++pairs;
      }
  CHECK(policy_spread(lib, sample) == doctest::Approx(expect / pairs));
  CHECK_THROWS_AS(policy_spread(lib, {}), UsageError);
}

TEST_CASE("empirical task capacity on the reference tables") {
  const auto dqn = empirical_task_capacity(kDqn, 27, 0.05);
  CHECK(dqn.n_pi_star == 4);
  CHECK(dqn.capacity == doctest::Approx(6.75));
  const auto ppo = empirical_task_capacity(kPpo, 27, 0.05);
  CHECK(ppo.n_pi_star == 1);
  CHECK(ppo.capacity == doctest::Approx(27));
  CHECK(empirical_task_capacity(kDqn, 27, 1.0).n_pi_star == 1);
}

TEST_CASE("integrated task capacity matches a Riemann-sum oracle") {
  CHECK(integrated_task_capacity(kDqn, 27) == doctest::Approx(riemann_itc(kDqn, 27)).epsilon(1e-4));
  CHECK(integrated_task_capacity(kPpo, 27) == doctest::Approx(riemann_itc(kPpo, 27)).epsilon(1e-4));
  CHECK(std::abs(integrated_task_capacity(kDqn, 27) - 18.7) <= 0.2);
  CHECK(std::abs(integrated_task_capacity(kPpo, 27) - 26.7) <= 0.3);

  // Only the 1-to-1 entry qualifies below eps = 1: ITC = 1.
  const auto only = table_of({{1, 0.0}, {27, 100.0}}, 27);
  CHECK(integrated_task_capacity(only, 27) == doctest::Approx(1.0));
}

TEST_CASE("capacity properties on random tables") {
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> u(1, 200);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::pair<int, double>> rows;
    for (int n : {1, 2, 3, 5, 9, 14, 27}) rows.push_back({n, u(g)});
    const auto t = table_of(rows, 27);
    double prev = 0;
    for (int i = 0; i <= 100; ++i) {
      const double eps = i / 100.0;
      const double c = empirical_task_capacity(t, 27, eps).capacity;
      CHECK(c == brute_capacity(t, 27, eps));
      CHECK(c >= prev);
      prev = c;
    }
    const double itc = integrated_task_capacity(t, 27);
    CHECK(itc <= 27 + 1e-12);
    CHECK(itc == doctest::Approx(riemann_itc(t, 27, 20000)).epsilon(2e-3));
  }
}

TEST_CASE("capacity table CSV parsing") {
  const auto t = parse_capacity_table("n_policies,lifetime_average\n1,71.8\n27,147.9\n", 27);
  CHECK(t.entries.size() == 2);
  CHECK(t.reference() == doctest::Approx(147.9));
  CHECK_THROWS_AS(parse_capacity_table("a,b\n1,2\n", 27), ConfigError);
  CHECK_THROWS_AS(parse_capacity_table("n_policies,lifetime_average\n1,2\n", 27), AnalysisError);
  CHECK_THROWS_AS(parse_capacity_table("n_policies,lifetime_average\n1,x\n", 27), ConfigError);
  const auto disk = load_capacity_table(std::string(POLYLIFE_DATA_DIR) + "/capacity/table1_dqn.csv", 27);
  CHECK(empirical_task_capacity(disk, 27, 0.05).capacity == doctest::Approx(6.75));
}

TEST_CASE("clustering degenerate inputs and reference cluster means") {
  std::vector<ClusterPoint> same(5, ClusterPoint{0, 0.01, 20});
  for (int i = 0; i < 5; ++i) same[i].task_index = i;
  CHECK(cluster_tasks(same, 0.1).size() == 1);

  const std::vector<std::pair<double, double>> means{{0.026, 17.5}, {0.026, 30}, {0.0125, 30}, {0.013, 17.5},
                                                     {0.006, 17.5}, {0.006, 30}, {0.004, 17.5}, {0.004, 30}};
  std::vector<ClusterPoint> pts;
  for (std::size_t i = 0; i < means.size(); ++i) pts.push_back({int(i), means[i].first, means[i].second});
  const auto cl = cluster_tasks(pts, 0.1);
  CHECK(cl.size() == 8);
  CHECK(theoretical_capacity(27, cl.size()) == doctest::Approx(3.375));
  // Linear scaling merges the small boundaries.
  CHECK(cluster_tasks(pts, 0.1, BoundaryScale::Linear).size() < 8);
  CHECK_THROWS_AS(cluster_tasks({}, 0.1), UsageError);
}

TEST_CASE("single linkage equals threshold-graph components") {
  std::mt19937_64 g(21);
  std::uniform_real_distribution<double> b(0.002, 0.05), l(10, 40);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<ClusterPoint> pts;
    for (int i = 0; i < 27; ++i) pts.push_back({i, b(g), l(g)});
    const double thr = 0.05 + 0.01 * (trial % 10);
    // Oracle: flood fill on scaled coordinates.
    double bmin = 1e9, bmax = -1e9, lmin = 1e9, lmax = -1e9;
    for (auto& p : pts) {
      bmin = std::min(bmin, std::log(p.boundary_theta_dot));
      bmax = std::max(bmax, std::log(p.boundary_theta_dot));
      lmin = std::min(lmin, p.mean_episode_length);
      lmax = std::max(lmax, p.mean_episode_length);
    }
    auto x = [&](int i) { return (std::log(pts[i].boundary_theta_dot) - bmin) / (bmax - bmin); };
    auto y = [&](int i) { return (pts[i].mean_episode_length - lmin) / (lmax - lmin); };
    std::vector<int> label(27, -1);
    int comps = 0;
    for (int s = 0; s < 27; ++s) {
      if (label[s] >= 0) continue;
      std::vector<int> todo{s};
      label[s] = comps;
      while (!todo.empty()) {
        const int i = todo.back();
        todo.pop_back();
        for (int j = 0; j < 27; ++j)
          if (label[j] < 0 && std::hypot(x(i) - x(j), y(i) - y(j)) <= thr) label[j] = comps, todo.push_back(j);
      }
      ++comps;
    }
    const auto cl = cluster_tasks(pts, thr);
    CHECK(int(cl.size()) == comps);
    for (const auto& c : cl)
      for (int t : c.task_indices) CHECK(label[t] == label[c.task_indices.front()]);
  }
}

TEST_CASE("linear approximator example") {
  using namespace theory;
  const auto f = linear_example_targets();
  const auto p1 = linear_policy(1.0), p2 = linear_policy(0.01);
  CHECK(expected_abs_error(p1, f[0]) == doctest::Approx(1.0 / 6).epsilon(1e-6));
  CHECK(expected_abs_error(p1, f[1]) == doctest::Approx(1.0 / 6).epsilon(1e-6));
  CHECK(expected_abs_error(p1, f[2]) == doctest::Approx(0.5 + 0.01 / 3 - 0.01).epsilon(1e-6));
  CHECK(std::abs(expected_abs_error(p1, f[2]) - 0.493) < 1e-3);
  CHECK(expected_abs_error(p2, f[2]) == doctest::Approx(1.0 / 600).epsilon(1e-6));
  CHECK(expected_abs_error(p2, f[3]) == doctest::Approx(1.0 / 600).epsilon(1e-6));
  CHECK(expected_abs_error(p1, f[3]) > 0.25);

  const auto iv = feasible_slopes(f[0], 0.25);
  CHECK(iv.first <= 1.0);
  CHECK(iv.second >= 1.0);
  CHECK(expected_abs_error(linear_policy(iv.first), f[0]) == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(min_linear_policies(f, 0.25) == 2);
  CHECK_THROWS_AS(min_linear_policies(f, 1e-3), AnalysisError);

  // Oracle: best partition of the four targets into groups sharing a grid slope.
  for (double eps : {0.05, 0.1, 0.25, 0.5, 0.9}) {
    std::vector<std::vector<bool>> ok(4);
    for (int t = 0; t < 4; ++t)
      for (int k = 0; k <= 4000; ++k) ok[t].push_back(expected_abs_error(linear_policy(-1 + k * 1e-3), f[t], 256) <= eps);
    auto shared = [&](int mask) {
      for (int k = 0; k <= 4000; ++k) {
        bool all = true;
        for (int t = 0; t < 4; ++t)
          if (mask >> t & 1) all = all && ok[t][k];
        if (all) return true;
      }
      return false;
    };
    std::function<int(int)> best = [&](int left) {
      if (!left) return 0;
      const int low = left & -left;
      int r = 100;
      for (int sub = left; sub; sub = (sub - 1) & left)
        if ((sub & low) && shared(sub)) r = std::min(r, 1 + best(left & ~sub));
      return r;
    };
    const int expect = best(15);
    if (expect < 100)
      CHECK(min_linear_policies(f, eps) == expect);
    else
      CHECK_THROWS_AS(min_linear_policies(f, eps), AnalysisError);
  }
}

TEST_CASE("chain example") {
  using namespace theory;
  const auto tasks = chain_example_tasks();
  const std::vector<std::vector<int>> expect{{0, 1}, {0, 1, 2}, {0, 1, 2, 3}, {3, 4}, {2, 3, 4}, {1, 2, 3, 4}};
  for (std::size_t i = 0; i < tasks.size(); ++i) CHECK(recurrent_states(tasks[i]) == expect[i]);
  CHECK(sweep_reward(2) == doctest::Approx(0.5));
  CHECK(sweep_reward(3) == doctest::Approx(1.0));
  CHECK(sweep_reward(4) == doctest::Approx(1.5));
  CHECK(sweep_reward(4, 1) == doctest::Approx(1.5 * 4 / 5));
  const auto b = chain_capacity_bounds(tasks, 0.25);
  CHECK(b.min_policies == 2);
  CHECK(b.max_policies == 6);
  CHECK(b.min_capacity == doctest::Approx(1.0));
  CHECK(b.max_capacity == doctest::Approx(3.0));
}
