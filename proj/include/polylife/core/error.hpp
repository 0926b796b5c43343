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

#include <stdexcept>
#include <string>

namespace polylife {

// Invalid dimensions, hyperparameters or experiment settings.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Non-finite values in gradients or parameter updates.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation called outside its contract (stepping a finished episode, ...).
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed or inconsistent run logs during post-hoc analysis.
class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polylife
