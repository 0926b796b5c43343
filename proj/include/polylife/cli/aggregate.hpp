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

#include <map>
#include <ostream>
#include <vector>

#include "polylife/reuse/lifetime.hpp"

namespace polylife::cli {

/// Per-block score (mean episode return) of each sequence, in block order.
std::map<int, std::vector<double>> block_scores(const reuse::RunLog& log);

/// Mean block score over the whole lifetime.
double lifetime_average(const std::vector<double>& scores);
/// Mean over the last `k` blocks (all blocks when fewer).
double final_average(const std::vector<double>& scores, int k = 10);

struct CurveRow {
  int window = 0;
  int first_block = 0;
  int last_block = 0;
  int n_sequences = 0;
  double mean = 0;
  double stderr_ = 0;
};

/// Learning curve: each sequence's block scores are averaged over windows of
/// `window_blocks` consecutive blocks, then mean and standard error are taken
/// across sequences. Throws AnalysisError on an empty log.
std::vector<CurveRow> aggregate_curve(const reuse::RunLog& log, int window_blocks);

/// Header: window,first_block,last_block,n_sequences,mean,stderr.
void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows);

}  // namespace polylife::cli
