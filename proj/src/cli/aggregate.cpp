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

#include "polylife/cli/aggregate.hpp"

#include <algorithm>
#include <cstdio>

#include "polylife/core/error.hpp"
#include "polylife/metrics/ratios.hpp"

namespace polylife::cli {

std::map<int, std::vector<double>> block_scores(const reuse::RunLog& log) {
  std::map<int, std::vector<double>> out;
  for (const auto& b : metrics::block_areas(log)) out[b.sequence_id].push_back(b.mean());
  return out;
}

double lifetime_average(const std::vector<double>& scores) {
  if (scores.empty()) throw AnalysisError("no blocks to average");
  double s = 0;
  for (double v : scores) s += v;
  return s / static_cast<double>(scores.size());
}

double final_average(const std::vector<double>& scores, int k) {
  const auto n = std::min<std::size_t>(scores.size(), static_cast<std::size_t>(k));
  return lifetime_average(std::vector<double>(scores.end() - static_cast<std::ptrdiff_t>(n), scores.end()));
}

std::vector<CurveRow> aggregate_curve(const reuse::RunLog& log, int window_blocks) {
  if (window_blocks < 1) throw UsageError("window must be at least one block");
  const auto scores = block_scores(log);
  if (scores.empty()) throw AnalysisError("aggregate: no episodes in input");
  std::size_t longest = 0;
  for (const auto& [seq, s] : scores) longest = std::max(longest, s.size());
  std::vector<CurveRow> rows;
  const std::size_t w = static_cast<std::size_t>(window_blocks);
  for (std::size_t start = 0; start < longest; start += w) {
    std::vector<double> per_seq;
    for (const auto& [seq, s] : scores) {
      if (start >= s.size()) continue;
      const auto end = std::min(s.size(), start + w);
      per_seq.push_back(lifetime_average(std::vector<double>(s.begin() + start, s.begin() + end)));
    }
    const auto sum = metrics::summarise(per_seq);
    CurveRow r;
    r.window = static_cast<int>(rows.size());
    r.first_block = static_cast<int>(start);
    r.last_block = static_cast<int>(std::min(longest, start + w) - 1);
    r.n_sequences = sum.count;
    r.mean = sum.mean;
    r.stderr_ = sum.stderr_;
    rows.push_back(r);
  }
  return rows;
}

void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows) {
  out << "window,first_block,last_block,n_sequences,mean,stderr\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%d,%d,%d,%.17g,%.17g\n", r.window, r.first_block, r.last_block, r.n_sequences,
                  r.mean, r.stderr_);
    out << buf;
  }
}

}  // namespace polylife::cli
