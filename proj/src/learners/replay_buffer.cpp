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

#include "polylife/learners/replay_buffer.hpp"

namespace polylife::learners {

const char* to_string(ReplayPolicy p) {
  switch (p) {
    case ReplayPolicy::Fifo: return "fifo";
    case ReplayPolicy::Gdm: return "gdm";
    case ReplayPolicy::GdmPlusFifo: return "gdm-plus-fifo";
    case ReplayPolicy::TaskMatching: return "task-matching";
  }
  return "?";
}

ReplayPolicy parse_replay_policy(const std::string& name) {
  for (auto p : {ReplayPolicy::Fifo, ReplayPolicy::Gdm, ReplayPolicy::GdmPlusFifo, ReplayPolicy::TaskMatching})
    if (name == to_string(p)) return p;
  throw ConfigError("unknown replay policy '" + name + "' (fifo, gdm, gdm-plus-fifo, task-matching)");
}

}  // namespace polylife::learners
