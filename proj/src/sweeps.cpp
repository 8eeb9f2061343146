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

#include "qcd/sweeps.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "qcd/error.hpp"
#include "qcd/orc.hpp"
#include "qcd/qadc.hpp"

namespace qcd {
namespace {

std::string tag(const std::string& method, BoundReport::Kind kind) {
  return method + "[" + to_string(kind) + "]";
}

// Raw, clamped and marker columns of a lower bound that may go negative.
void add_lower_columns(std::vector<std::string>& cols, const std::string& method) {
  cols.push_back(method + "[lower,raw]");
  cols.push_back(method + "[lower]");
  cols.push_back(method + "[clamped]");
}

void push_lower(std::vector<double>& row, double raw) {
  const double c = std::clamp(raw, 0.0, 1.0);
  row.push_back(raw);
  row.push_back(c);
  row.push_back(c != raw ? 1.0 : 0.0);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void check_grid(int grid) {
  if (grid < 1) throw DomainError("grid must have at least one point");
}

std::vector<QPair> points_for(double gap, int grid, const std::optional<QPair>& point) {
  if (point) {
    detail::require_probability(point->lo, "low probability");
    detail::require_probability(point->hi, "high probability");
    return {*point};
  }
  return gap_grid(gap, grid);
}

void require_ordered(double lower, double upper, double slack, const std::string& what) {
  if (lower > upper + slack) {
    throw InvariantError(what + ": " + fmt(lower) + " > " + fmt(upper));
  }
}

}  // namespace

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw DomainError("table has no column " + name);
  return static_cast<std::size_t>(it - columns.begin());
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    os << (c ? "," : "") << t.columns[c];
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << fmt(row[c]);
    os << '\n';
  }
}

void write_json(const Table& t, std::ostream& os) {
  nlohmann::json j;
  j["columns"] = t.columns;
  j["rows"] = t.rows;
  os << j.dump(1) << '\n';
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> linspace(double lo, double hi, int n) {
  check_grid(n);
  if (n == 1 || lo == hi) return {lo};
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  v.back() = hi;
  return v;
}

XiFunction parse_xi_table(const std::string& text) {
  std::map<long, double> table;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    long m = 0;
    double xi = 0.0;
    if (!(fields >> m)) continue;
    if (!(fields >> xi) || m < 1 || !(xi >= 0.0)) {
      throw DomainError("xi table line " + std::to_string(line_no) + ": expected 'M xi' with M >= 1, xi >= 0");
    }
    table[m] = xi;
  }
  if (table.empty()) throw DomainError("xi table has no entries");
  return [table](long m) {
    auto it = table.upper_bound(m);
    if (it == table.begin()) return 2.0;
    return std::prev(it)->second;
  };
}

XiFunction load_xi_table(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot read xi table " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_xi_table(ss.str());
}

std::vector<QPair> gap_grid(double gap, int grid) {
  detail::require_probability(gap, "gap");
  std::vector<QPair> out;
  for (double lo : linspace(0.0, 1.0 - gap, grid)) out.push_back({lo, std::min(1.0, lo + gap)});
  return out;
}

Table cmd_fig2(const Fig2Config& cfg) {
  if (cfg.m < 2 || cfg.d < 2) throw DomainError("fig2: need m >= 2 and d >= 2");
  check_grid(cfg.grid);
  Table t;
  t.columns = {"u", "gap", "q_T", "q_B", tag("qdc_cpf_entangled", BoundReport::Kind::exact),
               tag("qdc_cpf_unentangled", BoundReport::Kind::exact), "q_T_at_max"};
  struct Job {
    int u;
    double gap;
    QPair q;
  };
  std::vector<Job> jobs;
  for (int u : cfg.us) {
    if (u < 1) throw DomainError("fig2: u must be at least 1");
    if (cfg.point) {
      jobs.push_back({u, cfg.point->hi - cfg.point->lo, points_for(0.0, 1, cfg.point).front()});
      continue;
    }
    for (double gap : cfg.gaps) {
      for (const QPair& q : gap_grid(gap, cfg.grid)) jobs.push_back({u, gap, q});
    }
  }
  t.rows.resize(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const Job& j = jobs[i];
    const double ent = qdc_cpf(j.q.hi, j.q.lo, cfg.m, j.u, cfg.d, true).value;
    const double cls = qdc_cpf(j.q.hi, j.q.lo, cfg.m, j.u, cfg.d, false).value;
    const bool at_max = !cfg.point && j.q.lo == 1.0 - j.gap;
    t.rows[i] = {static_cast<double>(j.u), j.gap, j.q.lo, j.q.hi, ent, cls, at_max ? 1.0 : 0.0};
  });
  return t;
}

Table cmd_fig3(const Fig3Config& cfg) {
  check_grid(cfg.grid);
  Table t;
  t.columns = {"m", "u", "q_T", "q_B"};
  add_lower_columns(t.columns, "qadc_cpf_adaptive_lb_opt");
  t.columns.push_back("best_M");
  t.columns.push_back(tag("cpf_nonadaptive_fidelity_lb", BoundReport::Kind::lower));
  t.columns.push_back(tag("cpf_pgm", BoundReport::Kind::upper));
  struct Job {
    int m, u;
    QPair q;
  };
  std::vector<Job> jobs;
  for (const auto& [m, u] : cfg.m_u) {
    if (m < 2 || u < 1) throw DomainError("fig3: need m >= 2 and u >= 1");
    for (const QPair& q : points_for(cfg.gap, cfg.grid, cfg.point)) jobs.push_back({m, u, q});
  }
  t.rows.resize(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const Job& j = jobs[i];
    const double qt = j.q.lo, qb = j.q.hi;
    const MOptimizationResult opt =
        qadc_cpf_adaptive_lb_optimized(qb, qt, j.m, j.u, cfg.xi, cfg.ports);
    const double f = qadc_choi_fidelity(qb, qt);
    const double fid = cpf_nonadaptive_fidelity_lb(f, j.m, j.u).value;
    const CpfSpec spec{make_qadc(qb), make_qadc(qt), j.m, j.u};
    const double pgm = cpf_pgm_upper(spec).value;
    const std::string at = " at m=" + std::to_string(j.m) + ", u=" + std::to_string(j.u) +
                           ", q_T=" + fmt(qt) + ", q_B=" + fmt(qb);
    require_ordered(opt.best_value, fid, cfg.slack, "adaptive lower bound exceeds fidelity bound" + at);
    require_ordered(fid, pgm, cfg.slack, "fidelity bound exceeds PGM error" + at);
    std::vector<double> row{static_cast<double>(j.m), static_cast<double>(j.u), qt, qb};
    push_lower(row, opt.best_value);
    row.push_back(static_cast<double>(opt.best_m));
    row.push_back(fid);
    row.push_back(pgm);
    t.rows[i] = std::move(row);
  });
  return t;
}

ChannelKind parse_channel_kind(const std::string& s) {
  if (s == "qec") return ChannelKind::qec;
  if (s == "qdc") return ChannelKind::qdc;
  if (s == "qadc") return ChannelKind::qadc;
  throw DomainError("unknown channel kind '" + s + "' (expected qec, qdc or qadc)");
}

Table cmd_binary(const BinaryConfig& cfg) {
  if (cfg.u < 1) throw DomainError("binary: u must be at least 1");
  if (cfg.d < 2) throw DomainError("binary: d must be at least 2");
  check_grid(cfg.grid);
  struct Job {
    double gap;
    QPair q;
  };
  std::vector<Job> jobs;
  if (cfg.point) {
    jobs.push_back({cfg.point->hi - cfg.point->lo, points_for(0.0, 1, cfg.point).front()});
  } else {
    for (double gap : cfg.gaps) {
      for (const QPair& q : gap_grid(gap, cfg.grid)) jobs.push_back({gap, q});
    }
  }

  Table t;
  t.columns = {"gap", "q1", "q0"};
  if (cfg.kind != ChannelKind::qadc) {
    const std::string base = cfg.kind == ChannelKind::qec ? "qec_binary" : "qdc_binary";
    t.columns.push_back(tag(base + "_entangled", BoundReport::Kind::exact));
    t.columns.push_back(tag(base + "_unentangled", BoundReport::Kind::exact));
    t.rows.resize(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) {
      const Job& j = jobs[i];
      const double q1 = j.q.lo, q0 = j.q.hi;
      double ent = 0.0, cls = 0.0;
      if (cfg.kind == ChannelKind::qec) {
        // Neither entanglement nor adaptiveness changes the erasure result.
        ent = cls = qec_binary(q0, q1, cfg.u).value;
      } else {
        ent = qdc_binary(q0, q1, cfg.u, cfg.d, true).value;
        cls = qdc_binary(q0, q1, cfg.u, cfg.d, false).value;
      }
      t.rows[i] = {j.gap, q1, q0, ent, cls};
    });
    return t;
  }

  add_lower_columns(t.columns, "qadc_adaptive_lb_opt");
  t.columns.push_back("best_M");
  t.columns.push_back(tag("fvg", BoundReport::Kind::lower));
  t.columns.push_back(tag("fvg", BoundReport::Kind::upper));
  t.columns.push_back(tag("qadc_helstrom", BoundReport::Kind::exact));
  t.columns.push_back(tag("qadc_pgm", BoundReport::Kind::upper));
  const NullingVariant variants[] = {NullingVariant::apply_q0, NullingVariant::apply_q1,
                                     NullingVariant::apply_min, NullingVariant::apply_max};
  for (NullingVariant v : variants) {
    t.columns.push_back(tag(std::string("nulling_") + to_string(v), BoundReport::Kind::upper));
  }
  t.rows.resize(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const Job& j = jobs[i];
    const double q1 = j.q.lo, q0 = j.q.hi;
    const MOptimizationResult opt = qadc_adaptive_lb_optimized(q0, q1, cfg.u, cfg.xi, cfg.ports);
    const FvgBounds fvg = fvg_sandwich(qadc_choi_fidelity(q0, q1), cfg.u);
    const double hel = qadc_binary_helstrom(q0, q1, cfg.u).value;
    const double pgm = qadc_binary_pgm(q0, q1, cfg.u).value;
    const std::string at = " at q1=" + fmt(q1) + ", q0=" + fmt(q0);
    require_ordered(opt.best_value, hel, cfg.slack, "adaptive lower bound exceeds Helstrom" + at);
    require_ordered(fvg.lower, hel, cfg.slack, "fidelity lower bound exceeds Helstrom" + at);
    require_ordered(hel, fvg.upper, cfg.slack, "Helstrom exceeds fidelity upper bound" + at);
    require_ordered(hel, pgm, cfg.slack, "Helstrom exceeds PGM" + at);
    std::vector<double> row{j.gap, q1, q0};
    push_lower(row, opt.best_value);
    row.push_back(static_cast<double>(opt.best_m));
    row.push_back(fvg.lower);
    row.push_back(fvg.upper);
    row.push_back(hel);
    row.push_back(pgm);
    for (NullingVariant v : variants) {
      const double e = nulling_error(q0, q1, cfg.u, v);
      require_ordered(hel, e, cfg.slack, std::string("Helstrom exceeds nulling ") + to_string(v) + at);
      row.push_back(e);
    }
    t.rows[i] = std::move(row);
  });
  return t;
}

}  // namespace qcd
