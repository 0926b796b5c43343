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
#include <string>
#include <vector>

#include "json.hpp"
#include "polylife/envs/task.hpp"
#include "polylife/learners/factory.hpp"
#include "polylife/reuse/lifetime.hpp"

namespace polylife::cli {

enum class DomainName { Cartpole27, Cartpole125, Pocman18 };

const char* to_string(DomainName d);
DomainName parse_domain_name(const std::string& name);
std::vector<envs::TaskSpec> make_domain(DomainName d);
envs::Domain domain_family(DomainName d);

struct ExperimentConfig {
  DomainName domain = DomainName::Cartpole27;
  learners::LearnerConfig learner;
  int n_policies = 1;
  reuse::SelectorMode selector = reuse::SelectorMode::Unadaptive;
  double epsilon_select = 0.10;
  int n_sequences = 1;
  int block_length = 60000;  // in `unit`
  int n_blocks = 675;
  reuse::TimeUnit unit = reuse::TimeUnit::Steps;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  int spread_samples = 1000;
  int spread_window = 100000;
  std::string name;  // condition label; derived when empty

  int n_tau() const;
  std::vector<envs::TaskSpec> tasks() const;
  std::vector<envs::TaskSequence> sequences() const;
  reuse::LifetimeConfig lifetime() const;
  std::string condition() const;  // e.g. UnadaptiveDQN9P
  void validate() const;          // throws ConfigError
};

/// Keys: domain, learner, n_policies, selector, epsilon_select, n_sequences,
/// block_length, n_blocks, block_unit, replay, seed, out, spread_samples,
/// spread_window, name, hyperparameters. Unknown keys are rejected, as are
/// hyperparameters foreign to the chosen learner.
ExperimentConfig parse_experiment_config(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::string& path);
nlohmann::json to_json(const ExperimentConfig& cfg);

}  // namespace polylife::cli
