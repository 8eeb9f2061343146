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

// qcdbounds: figure tables, binary-discrimination sweeps and the oracle
// crosscheck from the command line.
//
// Exit codes: 0 success, 2 invalid configuration, 3 invariant violation.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qcd/crosscheck.hpp"
#include "qcd/error.hpp"
#include "qcd/sweeps.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

struct Options {
  std::string command;
  std::string kind = "qdc";
  std::vector<int> m;
  std::vector<int> u;
  std::optional<int> d;
  std::optional<double> q0, q1, q_b, q_t;
  std::vector<double> gaps;
  int grid = 200;
  long m_min = 1;
  long m_max = 1000000;
  std::string xi = "uniform";
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = qcd::CrosscheckOptions{}.seed;
  double tol = 1e-7;
  double budget = 600.0;
  std::string fault;
};

qcd::XiFunction make_xi(const std::string& spec) {
  if (spec == "uniform") return qcd::default_xi;
  const std::string prefix = "value-table:";
  if (spec.rfind(prefix, 0) == 0) return qcd::load_xi_table(spec.substr(prefix.size()));
  throw qcd::DomainError("--xi must be 'uniform' or 'value-table:FILE'");
}

// A pair of probabilities given on the command line, or nothing. Giving only one of
// the two is an error.
std::optional<qcd::QPair> explicit_point(const std::optional<double>& lo, const std::optional<double>& hi,
                                         const char* lo_name, const char* hi_name) {
  if (!lo && !hi) return std::nullopt;
  if (!lo || !hi) {
    throw qcd::DomainError(std::string("--") + lo_name + " and --" + hi_name + " must be given together");
  }
  return qcd::QPair{*lo, *hi};
}

int single(const std::vector<int>& v, int fallback, const char* name) {
  if (v.empty()) return fallback;
  if (v.size() != 1) throw qcd::DomainError(std::string("--") + name + " takes one value here");
  return v.front();
}

qcd::Table run_table(const Options& o) {
  const qcd::MRange ports{o.m_min, o.m_max};
  if (o.command == "fig2") {
    qcd::Fig2Config cfg;
    cfg.m = single(o.m, cfg.m, "m");
    cfg.d = o.d.value_or(cfg.d);
    if (!o.u.empty()) cfg.us = o.u;
    if (!o.gaps.empty()) cfg.gaps = o.gaps;
    cfg.grid = o.grid;
    cfg.point = explicit_point(o.q_t, o.q_b, "qT", "qB");
    return qcd::cmd_fig2(cfg);
  }
  if (o.command == "fig3") {
    qcd::Fig3Config cfg;
    if (!o.m.empty() || !o.u.empty()) {
      if (o.m.size() != o.u.size()) throw qcd::DomainError("fig3: --m and --u must list the same number of values");
      cfg.m_u.clear();
      for (std::size_t i = 0; i < o.m.size(); ++i) cfg.m_u.emplace_back(o.m[i], o.u[i]);
    }
    if (!o.gaps.empty()) {
      if (o.gaps.size() != 1) throw qcd::DomainError("fig3 takes a single --gap");
      cfg.gap = o.gaps.front();
    }
    cfg.grid = o.grid;
    cfg.point = explicit_point(o.q_t, o.q_b, "qT", "qB");
    cfg.xi = make_xi(o.xi);
    cfg.ports = ports;
    cfg.slack = o.tol;
    return qcd::cmd_fig3(cfg);
  }
  qcd::BinaryConfig cfg;
  cfg.kind = qcd::parse_channel_kind(o.kind);
  if (cfg.kind == qcd::ChannelKind::qadc) {
    cfg.u = 8;
    cfg.gaps = {0.04};
  }
  cfg.u = single(o.u, cfg.u, "u");
  cfg.d = o.d.value_or(cfg.d);
  if (!o.gaps.empty()) cfg.gaps = o.gaps;
  cfg.grid = o.grid;
  cfg.point = explicit_point(o.q1, o.q0, "q1", "q0");
  cfg.xi = make_xi(o.xi);
  cfg.ports = ports;
  cfg.slack = o.tol;
  return qcd::cmd_binary(cfg);
}

// Returns the stream to write to; `file` keeps a file open when --out is given.
std::ostream& output(const Options& o, std::ofstream& file) {
  if (o.out.empty()) return std::cout;
  file.open(o.out, std::ios::binary);
  if (!file) throw qcd::DomainError("cannot open output file " + o.out);
  return file;
}

int run(const Options& o) {
  if (o.format != "csv" && o.format != "json") throw qcd::DomainError("--format must be csv or json");
  std::ofstream file;
  if (o.command == "crosscheck") {
    qcd::CrosscheckOptions co;
    co.seed = o.seed;
    co.budget_seconds = o.budget;
    co.fault = o.fault;
    const qcd::CrosscheckReport report = qcd::run_crosscheck(co);
    std::ostream& os = output(o, file);
    if (o.format == "json") {
      qcd::write_report_json(report, os);
    } else {
      qcd::write_report(report, os);
    }
    if (!report.all_passed()) {
      for (const auto& c : report.checks) {
        if (!c.passed && !c.skipped) std::cerr << "invariant violation: " << c.name << " [" << c.detail << "]\n";
      }
      return kExitInvariant;
    }
    return 0;
  }
  const qcd::Table table = run_table(o);
  std::ostream& os = output(o, file);
  if (o.format == "json") {
    qcd::write_json(table, os);
  } else {
    qcd::write_csv(table, os);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Error-probability bounds for quantum channel discrimination and channel position finding"};
  Options o;
  app.add_option("--command", o.command, "fig2 | fig3 | binary | crosscheck")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3", "binary", "crosscheck"}));
  app.add_option("--kind", o.kind, "channel family for 'binary': qec | qdc | qadc")
      ->check(CLI::IsMember({"qec", "qdc", "qadc"}));
  app.add_option("--m", o.m, "number of cells (fig3: one per configuration)");
  app.add_option("--u", o.u, "rounds (fig2: list; fig3: one per configuration)");
  app.add_option("--d", o.d, "channel dimension for depolarizing channels");
  app.add_option("--q0", o.q0, "binary: probability of hypothesis 0 (with --q1)");
  app.add_option("--q1", o.q1, "binary: probability of hypothesis 1 (with --q0)");
  app.add_option("--qB", o.q_b, "CPF background probability (with --qT)");
  app.add_option("--qT", o.q_t, "CPF target probability (with --qB)");
  app.add_option("--gap", o.gaps, "probability gaps q_B - q_T (or q0 - q1)");
  app.add_option("--grid", o.grid, "points per sweep axis")->check(CLI::PositiveNumber);
  app.add_option("--M-min", o.m_min, "smallest number of teleportation ports")->check(CLI::PositiveNumber);
  app.add_option("--M-max", o.m_max, "largest number of teleportation ports")->check(CLI::PositiveNumber);
  app.add_option("--xi", o.xi, "port constant: uniform | value-table:FILE");
  app.add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", o.out, "output path (default: stdout)");
  app.add_option("--seed", o.seed, "crosscheck seed");
  app.add_option("--tol", o.tol, "slack for asserted orderings");
  app.add_option("--budget", o.budget, "crosscheck time budget in seconds");
  app.add_option("--inject-fault", o.fault, "crosscheck self-test: nulling-sign");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  try {
    return run(o);
  } catch (const qcd::InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const qcd::Error& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  }
}
