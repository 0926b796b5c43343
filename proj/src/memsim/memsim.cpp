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

#include "polylife/memsim/memsim.hpp"

#include <cmath>
#include <cstdio>

#include "polylife/core/error.hpp"
#include "polylife/core/random.hpp"

namespace polylife::memsim {

void MemSimConfig::validate() const {
  if (n_tau < 1) throw ConfigError("memsim: n_tau must be at least 1");
  if (!(task_capacity >= 1)) throw ConfigError("memsim: task capacity must be at least 1");
  if (blocks_to_convergence < 1) throw ConfigError("memsim: blocks to convergence must be at least 1");
  if (!(acceptance_probability >= 0 && acceptance_probability <= 1))
    throw ConfigError("memsim: acceptance probability must lie in [0, 1]");
  if (n_blocks < 1) throw ConfigError("memsim: n_blocks must be at least 1");
  if (runs < 1) throw ConfigError("memsim: runs must be at least 1");
}

namespace {

enum class Status { Unseen, Temporary, Library, Mapped };

struct Counts {
  int library = 0;
  int temporary = 0;
};

// One run; calls `emit(block, counts)` after each block.
template <class Emit>
void run_once(const MemSimConfig& cfg, Rng& rng, Emit&& emit) {
  std::vector<Status> status(cfg.n_tau, Status::Unseen);
  std::vector<int> visits(cfg.n_tau, 0);
  std::vector<int> load;  // tasks per library policy
  Counts c;
  for (int b = 0; b < cfg.n_blocks; ++b) {
    const int task = uniform_index(rng, cfg.n_tau);
    if (status[task] == Status::Unseen) {
      status[task] = Status::Temporary;
      ++c.temporary;
    }
    if (status[task] == Status::Temporary && ++visits[task] >= cfg.blocks_to_convergence) {
      --c.temporary;
      if (bernoulli(rng, cfg.acceptance_probability)) {
        status[task] = Status::Library;
        load.push_back(1);
        ++c.library;
      } else {
        status[task] = Status::Mapped;
        for (int& l : load)
          if (l < cfg.task_capacity) {
            ++l;
            break;
          }
      }
    }
    emit(b, c);
  }
}

}  // namespace

std::vector<MemSimRow> simulate_memory(const MemSimConfig& cfg) {
  cfg.validate();
  const std::size_t n = static_cast<std::size_t>(cfg.n_blocks);
  std::vector<double> lib(n, 0), tmp(n, 0), tot(n, 0), tot2(n, 0);
  for (int r = 0; r < cfg.runs; ++r) {
    Rng rng = make_rng(cfg.seed, {static_cast<std::uint64_t>(r)});
    run_once(cfg, rng, [&](int b, const Counts& c) {
      const double t = c.library + c.temporary;
      lib[b] += c.library;
      tmp[b] += c.temporary;
      tot[b] += t;
      tot2[b] += t * t;
    });
  }
  const double runs = cfg.runs;
  const double baseline = std::ceil(cfg.n_tau / cfg.task_capacity);
  std::vector<MemSimRow> rows(n);
  for (std::size_t b = 0; b < n; ++b) {
    auto& row = rows[b];
    row.block_index = static_cast<int>(b);
    row.mean_library = lib[b] / runs;
    row.mean_temporary = tmp[b] / runs;
    row.mean_total = tot[b] / runs;
    if (cfg.runs > 1) {
      const double var = std::max(0.0, (tot2[b] - runs * row.mean_total * row.mean_total) / (runs - 1));
      row.stderr_total = std::sqrt(var / runs);
    }
    row.baseline = baseline;
  }
  return rows;
}

void write_memsim_csv(std::ostream& out, const std::vector<MemSimRow>& rows) {
  out << "block_index,mean_library,mean_temporary,mean_total,baseline\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", r.block_index, r.mean_library, r.mean_temporary,
                  r.mean_total, r.baseline);
    out << buf;
  }
}

}  // namespace polylife::memsim
