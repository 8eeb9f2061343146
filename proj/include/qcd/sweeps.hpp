// Copyright 2026 The qcdbounds Authors
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

// Parameter sweeps behind the command-line tool: figure tables for CPF with
// depolarizing and amplitude-damping channels, binary-discrimination tables,
// and their CSV / JSON serialization.

#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcd/channels.hpp"
#include "qcd/cpf.hpp"

namespace qcd {

/// Numeric table. Bound columns are named "<method>[<kind>]"; lower bounds that can
/// go negative come as a raw column, a clamped column and a 0/1 "[clamped]" marker.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;  // throws if absent
};

/// CSV: header row, then rows in %.16e (17 significant digits), LF line endings.
void write_csv(const Table& t, std::ostream& os);
/// JSON object {"columns": [...], "rows": [[...], ...]}.
void write_json(const Table& t, std::ostream& os);

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 = hardware concurrency).
/// Each index is handled exactly once; results must be written to per-index slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

/// n evenly spaced values from lo to hi inclusive (a single value when lo == hi).
std::vector<double> linspace(double lo, double hi, int n);

/// xi(M) from text lines "M value" (comma or whitespace separated, '#' comments):
/// a step function taking the entry with the largest tabulated M' <= M, and 2 below
/// the first entry.
XiFunction parse_xi_table(const std::string& text);
XiFunction load_xi_table(const std::string& path);

/// Pair of probabilities swept together: `lo` is q_T (or q1), `hi` = lo + gap is
/// q_B (or q0).
struct QPair {
  double lo = 0.0;
  double hi = 0.0;
};

/// Grid over lo in [0, 1 - gap] with `grid` points.
std::vector<QPair> gap_grid(double gap, int grid);

struct Fig2Config {
  int m = 5;
  int d = 100;
  std::vector<int> us{1, 3};
  std::vector<double> gaps{0.5, 0.9, 0.99, 0.999};
  int grid = 200;
  std::optional<QPair> point;  // single (q_T, q_B) instead of the gap grids
};

/// CPF with depolarizing channels: entangled vs unentangled exact error per (u, gap, q_T).
Table cmd_fig2(const Fig2Config& cfg);

struct Fig3Config {
  std::vector<std::pair<int, int>> m_u{{2, 4}, {4, 2}};
  double gap = 0.04;
  int grid = 200;
  std::optional<QPair> point;
  XiFunction xi = default_xi;
  MRange ports{};
  double slack = 1e-7;
};

/// CPF with amplitude-damping channels: optimized adaptive lower bound, non-adaptive
/// fidelity lower bound and PGM upper bound. Throws InvariantError if a row breaks
/// adaptive <= fidelity <= PGM beyond `slack`.
Table cmd_fig3(const Fig3Config& cfg);

enum class ChannelKind { qec, qdc, qadc };

ChannelKind parse_channel_kind(const std::string& s);

struct BinaryConfig {
  ChannelKind kind = ChannelKind::qdc;
  int u = 30;
  int d = 6;
  std::vector<double> gaps{0.2, 0.4, 0.6, 0.8};
  int grid = 200;
  std::optional<QPair> point;  // (q1, q0)
  XiFunction xi = default_xi;
  MRange ports{};
  double slack = 1e-7;
};

/// Binary discrimination. QEC/QDC: exact entangled and unentangled errors. QADC:
/// optimized adaptive lower bound, fidelity sandwich, compressed Helstrom, PGM and
/// every nulling variant; the ordering lower <= Helstrom <= receivers is asserted.
Table cmd_binary(const BinaryConfig& cfg);

}  // namespace qcd
