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

#include "polylife/metrics/capacity.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "polylife/core/error.hpp"

namespace polylife::metrics {

double CapacityTable::reference() const {
  for (const auto& e : entries)
    if (e.n_policies == one_to_one_policies) return e.lifetime_average;
  throw AnalysisError("capacity table has no 1-to-1 entry (" + std::to_string(one_to_one_policies) + " policies)");
}

CapacityResult empirical_task_capacity(const CapacityTable& table, int n_tau, double eps) {
  if (n_tau < 1) throw UsageError("n_tau must be positive");
  const double threshold = (1.0 - eps) * table.reference();
  int best = table.one_to_one_policies;
  for (const auto& e : table.entries)
    if (e.lifetime_average >= threshold) best = std::min(best, e.n_policies);
  return {static_cast<double>(n_tau) / best, best};
}

double integrated_task_capacity(const CapacityTable& table, int n_tau) {
  const double ref = table.reference();
  if (!(ref > 0)) throw AnalysisError("integrated capacity needs a positive 1-to-1 lifetime average");
  std::vector<double> cuts{0.0, 1.0};
  for (const auto& e : table.entries) {
    const double b = 1.0 - e.lifetime_average / ref;
    if (b > 0 && b < 1) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double width = cuts[i + 1] - cuts[i];
    if (width <= 0) continue;
    total += width * empirical_task_capacity(table, n_tau, 0.5 * (cuts[i] + cuts[i + 1])).capacity;
  }
  return total;
}

CapacityTable parse_capacity_table(const std::string& text, int n_tau) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("n_policies,lifetime_average", 0) != 0)
    throw ConfigError("capacity table must start with header n_policies,lifetime_average");
  CapacityTable t;
  t.one_to_one_policies = n_tau;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    std::istringstream cells(line);
    std::string a, b;
    if (!std::getline(cells, a, ',') || !std::getline(cells, b))
      throw ConfigError("capacity table row " + std::to_string(row) + " needs two columns");
    CapacityEntry e;
    try {
      std::size_t used = 0;
      e.n_policies = std::stoi(a, &used);
      e.lifetime_average = std::stod(b);
    } catch (const std::exception&) {
      throw ConfigError("capacity table row " + std::to_string(row) + " is not numeric");
    }
    if (e.n_policies < 1 || e.n_policies > n_tau)
      throw ConfigError("capacity table row " + std::to_string(row) + ": n_policies out of range");
    t.entries.push_back(e);
  }
  t.reference();
  return t;
}

CapacityTable load_capacity_table(const std::string& path, int n_tau) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open capacity table " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_capacity_table(ss.str(), n_tau);
}

}  // namespace polylife::metrics
