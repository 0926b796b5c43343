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

#include "polylife/cli/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <set>

#include "polylife/core/error.hpp"
#include "polylife/envs/sequence.hpp"

namespace polylife::cli {

using nlohmann::json;

const char* to_string(DomainName d) {
  switch (d) {
    case DomainName::Cartpole27: return "cartpole27";
    case DomainName::Cartpole125: return "cartpole125";
    case DomainName::Pocman18: return "pocman18";
  }
  return "?";
}

DomainName parse_domain_name(const std::string& name) {
  if (name == "cartpole27") return DomainName::Cartpole27;
  if (name == "cartpole125") return DomainName::Cartpole125;
  if (name == "pocman18") return DomainName::Pocman18;
  throw ConfigError("unknown domain '" + name + "' (cartpole27, cartpole125, pocman18)");
}

std::vector<envs::TaskSpec> make_domain(DomainName d) {
  switch (d) {
    case DomainName::Cartpole27: return envs::make_cartpole_domain(27);
    case DomainName::Cartpole125: return envs::make_cartpole_domain(125);
    case DomainName::Pocman18: return envs::make_pocman_domain();
  }
  throw ConfigError("unknown domain");
}

envs::Domain domain_family(DomainName d) {
  return d == DomainName::Pocman18 ? envs::Domain::Pocman : envs::Domain::Cartpole;
}

int ExperimentConfig::n_tau() const {
  switch (domain) {
    case DomainName::Cartpole27: return 27;
    case DomainName::Cartpole125: return 125;
    case DomainName::Pocman18: return 18;
  }
  return 0;
}

std::vector<envs::TaskSpec> ExperimentConfig::tasks() const { return make_domain(domain); }

std::vector<envs::TaskSequence> ExperimentConfig::sequences() const {
  return envs::make_task_sequences(n_tau(), n_sequences, n_blocks, seed, block_length);
}

reuse::LifetimeConfig ExperimentConfig::lifetime() const {
  reuse::LifetimeConfig lc;
  lc.n_policies = n_policies;
  lc.selector.mode = selector;
  lc.selector.epsilon = epsilon_select;
  lc.learner = learner;
  lc.unit = unit;
  lc.seed = seed;
  lc.spread_samples = spread_samples;
  lc.spread_window = spread_window;
  return lc;
}

std::string ExperimentConfig::condition() const {
  if (!name.empty()) return name;
  std::string learner_label;
  switch (learner.kind) {
    case learners::LearnerKind::Dqn: learner_label = "DQN"; break;
    case learners::LearnerKind::Drqn: learner_label = "DRQN"; break;
    case learners::LearnerKind::Ppo: learner_label = "PPO"; break;
    case learners::LearnerKind::PpoLstm: learner_label = "PPOLSTM"; break;
    case learners::LearnerKind::UniformRandom: return "UniformRandom";
  }
  const std::string mode = selector == reuse::SelectorMode::Adaptive ? "Adaptive" : "Unadaptive";
  return mode + learner_label + std::to_string(n_policies) + "P";
}

void ExperimentConfig::validate() const {
  const int nt = n_tau();
  if (n_policies < 1 || n_policies > nt)
    throw ConfigError("n_policies must be in [1, " + std::to_string(nt) + "], got " + std::to_string(n_policies));
  if (n_sequences < 1 || n_sequences > nt)
    throw ConfigError("n_sequences must be in [1, " + std::to_string(nt) + "]");
  if (block_length < 1) throw ConfigError("block_length must be positive");
  if (n_blocks < 1) throw ConfigError("n_blocks must be positive");
  if (!(epsilon_select >= 0 && epsilon_select <= 1)) throw ConfigError("epsilon_select must lie in [0, 1]");
  if (spread_samples < 0 || spread_window < 1) throw ConfigError("spread sample settings must be positive");
  if (domain == DomainName::Pocman18 && !learners::is_recurrent(learner.kind) &&
      learner.kind != learners::LearnerKind::UniformRandom)
    throw ConfigError("pocman18 is partially observable and needs a recurrent learner (drqn or ppo-lstm)");
  learner.dqn.validate();
  learner.ppo.validate();
}

namespace {

template <class T>
T get(const json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

using Setter = std::function<void(const json&)>;

std::map<std::string, Setter> dqn_setters(learners::DqnConfig& c) {
  return {
      {"hidden", [&](const json& v) { c.hidden = get<int>(v, "hidden"); }},
      {"gamma", [&](const json& v) { c.gamma = get<double>(v, "gamma"); }},
      {"batch_size", [&](const json& v) { c.batch_size = get<int>(v, "batch_size"); }},
      {"update_every", [&](const json& v) { c.update_every = get<int>(v, "update_every"); }},
      {"buffer_capacity", [&](const json& v) { c.buffer_capacity = get<std::int64_t>(v, "buffer_capacity"); }},
      {"learning_rate", [&](const json& v) { c.learning_rate = get<double>(v, "learning_rate"); }},
      {"rho", [&](const json& v) { c.rho = get<double>(v, "rho"); }},
      {"exploration", [&](const json& v) { c.exploration = get<double>(v, "exploration"); }},
      {"clip_value", [&](const json& v) { c.clip_value = get<double>(v, "clip_value"); }},
      {"replay_start", [&](const json& v) { c.replay_start = get<std::int64_t>(v, "replay_start"); }},
      {"target_sync", [&](const json& v) { c.target_sync = get<std::int64_t>(v, "target_sync"); }},
      {"trace_length", [&](const json& v) { c.trace_length = get<int>(v, "trace_length"); }},
      {"burn_in", [&](const json& v) { c.burn_in = get<int>(v, "burn_in"); }},
  };
}

std::map<std::string, Setter> ppo_setters(learners::PpoConfig& c) {
  return {
      {"hidden", [&](const json& v) { c.hidden = get<int>(v, "hidden"); }},
      {"gamma", [&](const json& v) { c.gamma = get<double>(v, "gamma"); }},
      {"gae_lambda", [&](const json& v) { c.gae_lambda = get<double>(v, "gae_lambda"); }},
      {"clip", [&](const json& v) { c.clip = get<double>(v, "clip"); }},
      {"value_coef", [&](const json& v) { c.value_coef = get<double>(v, "value_coef"); }},
      {"entropy_coef", [&](const json& v) { c.entropy_coef = get<double>(v, "entropy_coef"); }},
      {"learning_rate", [&](const json& v) { c.learning_rate = get<double>(v, "learning_rate"); }},
      {"epochs", [&](const json& v) { c.epochs = get<int>(v, "epochs"); }},
      {"minibatch", [&](const json& v) { c.minibatch = get<int>(v, "minibatch"); }},
      {"max_grad_norm", [&](const json& v) { c.max_grad_norm = get<double>(v, "max_grad_norm"); }},
      {"update_every", [&](const json& v) { c.update_every = get<int>(v, "update_every"); }},
      {"burn_in", [&](const json& v) { c.burn_in = get<int>(v, "burn_in"); }},
  };
}

bool is_dqn_family(learners::LearnerKind k) {
  return k == learners::LearnerKind::Dqn || k == learners::LearnerKind::Drqn;
}

bool is_ppo_family(learners::LearnerKind k) {
  return k == learners::LearnerKind::Ppo || k == learners::LearnerKind::PpoLstm;
}

}  // namespace

ExperimentConfig parse_experiment_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{"domain",        "learner",        "n_policies", "selector",
                                           "epsilon_select", "n_sequences",    "block_length", "n_blocks",
                                           "block_unit",    "replay",         "seed",       "out",
                                           "spread_samples", "spread_window", "name",       "hyperparameters"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw ConfigError("unknown config key '" + k + "'");

  ExperimentConfig c;
  if (j.contains("domain")) c.domain = parse_domain_name(get<std::string>(j["domain"], "domain"));
  const auto kind = j.contains("learner") ? learners::parse_learner_kind(get<std::string>(j["learner"], "learner"))
                                          : learners::LearnerKind::Dqn;
  c.learner = learners::default_learner_config(kind, domain_family(c.domain));
  c.unit = reuse::default_time_unit(domain_family(c.domain));
  if (c.domain == DomainName::Pocman18) c.block_length = 300;

  if (j.contains("n_policies")) c.n_policies = get<int>(j["n_policies"], "n_policies");
  if (j.contains("selector")) c.selector = reuse::parse_selector_mode(get<std::string>(j["selector"], "selector"));
  if (j.contains("epsilon_select")) c.epsilon_select = get<double>(j["epsilon_select"], "epsilon_select");
  if (j.contains("n_sequences")) c.n_sequences = get<int>(j["n_sequences"], "n_sequences");
  if (j.contains("block_length")) c.block_length = get<int>(j["block_length"], "block_length");
  if (j.contains("n_blocks")) c.n_blocks = get<int>(j["n_blocks"], "n_blocks");
  if (j.contains("block_unit")) {
    const auto u = get<std::string>(j["block_unit"], "block_unit");
    if (u == "steps")
      c.unit = reuse::TimeUnit::Steps;
    else if (u == "episodes")
      c.unit = reuse::TimeUnit::Episodes;
    else
      throw ConfigError("block_unit must be 'steps' or 'episodes'");
  }
  if (j.contains("replay")) {
    if (!is_dqn_family(kind)) throw ConfigError("'replay' applies only to dqn and drqn");
    c.learner.dqn.replay = learners::parse_replay_policy(get<std::string>(j["replay"], "replay"));
  }
  if (j.contains("seed")) c.seed = get<std::uint64_t>(j["seed"], "seed");
  if (j.contains("out")) c.out_dir = get<std::string>(j["out"], "out");
  if (j.contains("spread_samples")) c.spread_samples = get<int>(j["spread_samples"], "spread_samples");
  if (j.contains("spread_window")) c.spread_window = get<int>(j["spread_window"], "spread_window");
  if (j.contains("name")) c.name = get<std::string>(j["name"], "name");
  if (j.contains("hyperparameters")) {
    const auto& h = j["hyperparameters"];
    if (!h.is_object()) throw ConfigError("'hyperparameters' must be an object");
    std::map<std::string, Setter> setters;
    if (is_dqn_family(kind)) setters = dqn_setters(c.learner.dqn);
    if (is_ppo_family(kind)) setters = ppo_setters(c.learner.ppo);
    for (const auto& [k, v] : h.items()) {
      const auto it = setters.find(k);
      if (it == setters.end())
        throw ConfigError("hyperparameter '" + k + "' is not recognised for learner " + learners::to_string(kind));
      it->second(v);
    }
  }
  c.validate();
  return c;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
  return parse_experiment_config(j);
}

json to_json(const ExperimentConfig& c) {
  json h;
  const auto kind = c.learner.kind;
  if (is_dqn_family(kind)) {
    const auto& d = c.learner.dqn;
    h = {{"hidden", d.hidden},           {"gamma", d.gamma},
         {"batch_size", d.batch_size},   {"update_every", d.update_every},
         {"buffer_capacity", d.buffer_capacity}, {"learning_rate", d.learning_rate},
         {"rho", d.rho},                 {"exploration", d.exploration},
         {"clip_value", d.clip_value},   {"replay_start", d.replay_start},
         {"target_sync", d.target_sync}, {"trace_length", d.trace_length},
         {"burn_in", d.burn_in}};
  } else if (is_ppo_family(kind)) {
    const auto& p = c.learner.ppo;
    h = {{"hidden", p.hidden},       {"gamma", p.gamma},           {"gae_lambda", p.gae_lambda},
         {"clip", p.clip},           {"value_coef", p.value_coef}, {"entropy_coef", p.entropy_coef},
         {"learning_rate", p.learning_rate}, {"epochs", p.epochs}, {"minibatch", p.minibatch},
         {"max_grad_norm", p.max_grad_norm}, {"update_every", p.update_every}, {"burn_in", p.burn_in}};
  } else {
    h = json::object();
  }
  json j = {{"domain", to_string(c.domain)},
            {"learner", learners::to_string(kind)},
            {"n_policies", c.n_policies},
            {"selector", reuse::to_string(c.selector)},
            {"epsilon_select", c.epsilon_select},
            {"n_sequences", c.n_sequences},
            {"block_length", c.block_length},
            {"n_blocks", c.n_blocks},
            {"block_unit", c.unit == reuse::TimeUnit::Steps ? "steps" : "episodes"},
            {"seed", c.seed},
            {"out", c.out_dir},
            {"spread_samples", c.spread_samples},
            {"spread_window", c.spread_window},
            {"name", c.condition()},
            {"hyperparameters", h}};
  if (is_dqn_family(kind)) j["replay"] = learners::to_string(c.learner.dqn.replay);
  return j;
}

}  // namespace polylife::cli
