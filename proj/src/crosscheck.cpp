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

#include "qcd/crosscheck.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "qcd/channels.hpp"
#include "qcd/cpf.hpp"
#include "qcd/discrimination.hpp"
#include "qcd/error.hpp"
#include "qcd/orc.hpp"
#include "qcd/qadc.hpp"
#include "qcd/random.hpp"

namespace qcd {
namespace {

// Keeps the worst disagreement seen by a check and where it happened.
struct Worst {
  double error = 0.0;
  std::string where;

  void observe(double err, const std::function<std::string()>& describe) {
    if (!(err <= error)) {  // NaN counts as worst
      error = err;
      where = describe();
    }
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double uniform(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

// Excess of `lower` over `upper`, zero when ordered.
double excess(double lower, double upper) { return std::max(0.0, lower - upper); }

using Check = std::function<Worst(Rng&)>;

struct Entry {
  std::string name;
  double tolerance;
  Check run;
};

std::vector<Entry> build_checks(const CrosscheckOptions& opt) {
  std::vector<Entry> checks;
  HelstromOptions hopt;
  hopt.tol = opt.helstrom_tol;

  checks.push_back({"u1_closed_form_vs_enumeration", 1e-12, [](Rng&) {
    Worst w;
    const auto grid = std::vector<double>{0.0, 0.05, 0.2, 0.37, 0.5, 0.63, 0.8, 0.95, 1.0};
    for (int m = 2; m <= 6; ++m) {
      for (double qb : grid) {
        for (double qt : grid) {
          const double a = h_m1_closed(qb, qt, m);
          const double b = h_mu_enumerate({qb, qt, 1, m});
          w.observe(std::abs(a - b), [&] { return "m=" + std::to_string(m) + " q_B=" + num(qb) + " q_T=" + num(qt); });
        }
      }
    }
    return w;
  }});

  checks.push_back({"enumeration_vs_weights_vs_orbits", 1e-12, [](Rng& rng) {
    Worst w;
    for (int m = 2; m <= 4; ++m) {
      for (int u = 1; u * m <= 12; ++u) {
        for (int k = 0; k < 6; ++k) {
          const OrcParams p{uniform(rng), uniform(rng), u, m};
          const double e = h_mu_enumerate(p);
          const double err = std::max(std::abs(e - h_mu_weights(p)), std::abs(e - h_mu_orbits(p)));
          w.observe(err, [&] { return "m=" + std::to_string(m) + " u=" + std::to_string(u) + " q_B=" + num(p.q_b) + " q_T=" + num(p.q_t); });
        }
      }
    }
    return w;
  }});

  checks.push_back({"reflection_symmetry", 1e-13, [](Rng& rng) {
    Worst w;
    for (int k = 0; k < 40; ++k) {
      const double a = uniform(rng), b = uniform(rng);
      for (int u : {1, 3, 7}) {
        w.observe(std::abs(f_u(a, b, u) - f_u(1 - a, 1 - b, u)), [&] { return "f_u u=" + std::to_string(u) + " q=" + num(a) + "," + num(b); });
      }
      for (int m : {2, 3, 5}) {
        for (int u : {1, 2}) {
          const double d = h_mu({a, b, u, m}) - h_mu({1 - a, 1 - b, u, m});
          w.observe(std::abs(d), [&] { return "h m=" + std::to_string(m) + " u=" + std::to_string(u) + " q=" + num(a) + "," + num(b); });
        }
      }
    }
    return w;
  }});

  checks.push_back({"binary_formulas_vs_trace_norm", 1e-9, [](Rng& rng) {
    Worst w;
    for (int k = 0; k < 3; ++k) {
      const double q0 = uniform(rng), q1 = uniform(rng);
      for (int u = 1; u <= 3; ++u) {
        const double qec = helstrom_binary(tensor_power(choi(make_qec(2, q0)), u),
                                           tensor_power(choi(make_qec(2, q1)), u)).value;
        w.observe(std::abs(qec - qec_binary(q0, q1, u).value), [&] { return "qec u=" + std::to_string(u) + " q=" + num(q0) + "," + num(q1); });
        const double qdc = helstrom_binary(tensor_power(choi(make_qdc(2, q0)), u),
                                           tensor_power(choi(make_qdc(2, q1)), u)).value;
        w.observe(std::abs(qdc - qdc_binary(q0, q1, u, 2, true).value), [&] { return "qdc u=" + std::to_string(u) + " q=" + num(q0) + "," + num(q1); });
      }
    }
    return w;
  }});

  checks.push_back({"telecovariant_cpf_tightness", 1e-6, [hopt](Rng& rng) {
    Worst w;
    for (int k = 0; k < 2; ++k) {
      const double qb = uniform(rng), qt = uniform(rng);
      const CpfSpec qec{make_qec(2, qb), make_qec(2, qt), 2, 1};
      const HelstromResult a = helstrom_iterative(build_cpf_choi_ensemble(qec), hopt);
      w.observe(std::max(0.0, std::abs(a.report.value - qec_cpf(qb, qt, 2, 1).value) - a.certificate_gap),
                [&] { return "qec q_B=" + num(qb) + " q_T=" + num(qt); });
      const CpfSpec qdc{make_qdc(2, qb), make_qdc(2, qt), 2, 1};
      const HelstromResult b = helstrom_iterative(build_cpf_choi_ensemble(qdc), hopt);
      w.observe(std::max(0.0, std::abs(b.report.value - qdc_cpf(qb, qt, 2, 1, 2, true).value) - b.certificate_gap),
                [&] { return "qdc q_B=" + num(qb) + " q_T=" + num(qt); });
    }
    return w;
  }});

  checks.push_back({"qadc_binary_sandwich", 1e-7, [](Rng& rng) {
    Worst w;
    for (int k = 0; k < 4; ++k) {
      const double q1 = 0.96 * uniform(rng), q0 = q1 + 0.04;
      for (int u = 1; u <= 4; ++u) {
        const FvgBounds fvg = fvg_sandwich(qadc_choi_fidelity(q0, q1), u);
        const double hel = qadc_binary_helstrom(q0, q1, u).value;
        double upper = std::min(fvg.upper, qadc_binary_pgm(q0, q1, u).value);
        upper = std::min(upper, nulling_error(q0, q1, u, NullingVariant::apply_min));
        w.observe(std::max(excess(fvg.lower, hel), excess(hel, upper)),
                  [&] { return "u=" + std::to_string(u) + " q0=" + num(q0) + " q1=" + num(q1); });
      }
    }
    return w;
  }});

  checks.push_back({"nulling_distribution_vs_conjugation", 1e-10, [fault = opt.fault](Rng& rng) {
    Worst w;
    for (int k = 0; k < 10; ++k) {
      const double q = uniform(rng), qp = k == 0 ? q : uniform(rng);
      const ComplexMatrix u = nulling_unitary(q);
      const ComplexMatrix conj = u * choi(make_qadc(qp)).matrix() * u.adjoint();
      std::array<double, 4> probs = nulling_outcome_dist(q, qp).probs();
      if (fault == "nulling-sign") probs[3] = -probs[3];
      const OutcomeDistribution dist(probs);  // rejects negative entries
      for (std::size_t i = 0; i < 4; ++i) {
        w.observe(std::abs(conj(static_cast<Index>(i), static_cast<Index>(i)).real() - dist[i]),
                  [&] { return "q=" + num(q) + " q'=" + num(qp) + " outcome " + std::to_string(i); });
      }
    }
    return w;
  }});

  checks.push_back({"ensemble_bound_ordering", 1e-7, [hopt](Rng& rng) {
    Worst w;
    for (int k = 0; k < 8; ++k) {
      const int m = 2 + static_cast<int>(rng() % 3);
      const Index dim = 2 + static_cast<Index>(rng() % 3);
      std::vector<DensityMatrix> states;
      for (int n = 0; n < m; ++n) states.push_back(random_density(dim, 1 + static_cast<Index>(rng() % dim), rng));
      const StateEnsemble e(states, random_priors(static_cast<std::size_t>(m), rng));
      const HelstromResult h = helstrom_iterative(e, hopt);
      const double lo = fidelity_lower_bound(e).value;
      const double pgm = pgm_error(e).value;
      const double hi = std::min(1.0, fidelity_upper_bound(e).value);
      const double err = std::max({excess(lo, h.report.value), excess(h.report.value - h.certificate_gap, pgm),
                                   excess(pgm, hi)});
      w.observe(err, [&] { return "m=" + std::to_string(m) + " dim=" + std::to_string(dim) + " trial " + std::to_string(k); });
    }
    return w;
  }});

  checks.push_back({"cyclic_pure_closed_form", 1e-6, [hopt](Rng& rng) {
    Worst w;
    for (int m = 2; m <= 4; ++m) {
      const double eta = uniform(rng);
      const HelstromResult h = helstrom_iterative(cyclic_pure_ensemble(eta, m), hopt);
      w.observe(std::abs(h.report.value - gus_unitary_helstrom(eta, m).value),
                [&] { return "m=" + std::to_string(m) + " eta=" + num(eta); });
    }
    return w;
  }});

  checks.push_back({"cpf_pgm_symmetric_vs_gram", 1e-9, [](Rng& rng) {
    Worst w;
    for (const auto& [m, u] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}}) {
      const double qt = 0.9 * uniform(rng), qb = qt + 0.1 * uniform(rng);
      const CpfSpec spec{make_qadc(qb), make_qadc(qt), m, u};
      w.observe(std::abs(cpf_pgm_upper(spec).value - cpf_pgm_upper_gram(spec).value),
                [&] { return "m=" + std::to_string(m) + " u=" + std::to_string(u) + " q_B=" + num(qb) + " q_T=" + num(qt); });
    }
    return w;
  }});

  checks.push_back({"qadc_cpf_sandwich", 1e-7, [hopt](Rng& rng) {
    Worst w;
    for (int m = 2; m <= 3; ++m) {
      const double qt = 0.96 * uniform(rng), qb = qt + 0.04;
      const CpfSpec spec{make_qadc(qb), make_qadc(qt), m, 1};
      const double lo = cpf_nonadaptive_fidelity_lb(qadc_choi_fidelity(qb, qt), m, 1).value;
      const HelstromResult h = helstrom_iterative(cpf_compressed_ensemble(spec), hopt);
      const double pgm = cpf_pgm_upper(spec).value;
      w.observe(std::max(excess(lo, h.report.value), excess(h.report.value - h.certificate_gap, pgm)),
                [&] { return "m=" + std::to_string(m) + " q_T=" + num(qt); });
    }
    return w;
  }});

  return checks;
}

}  // namespace

bool CrosscheckReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed || c.skipped; });
}

CrosscheckReport run_crosscheck(const CrosscheckOptions& options) {
  if (!options.fault.empty() && options.fault != "nulling-sign") {
    throw DomainError("unknown fault '" + options.fault + "'");
  }
  const auto start = std::chrono::steady_clock::now();
  CrosscheckReport report;
  std::uint64_t index = 0;
  for (const Entry& e : build_checks(options)) {
    CheckResult r;
    r.name = e.name;
    r.tolerance = e.tolerance;
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > options.budget_seconds) {
      r.skipped = true;
      r.detail = "time budget exhausted";
      report.checks.push_back(std::move(r));
      continue;
    }
    // Each check has its own stream so skipping one never shifts another's inputs.
    Rng rng(options.seed + 0x9e3779b97f4a7c15ULL * ++index);
    try {
      const Worst w = e.run(rng);
      r.max_error = w.error;
      r.passed = w.error <= e.tolerance;
      r.detail = w.where;
    } catch (const Error& ex) {
      r.passed = false;
      r.max_error = std::numeric_limits<double>::infinity();
      r.detail = ex.what();
    }
    report.checks.push_back(std::move(r));
  }
  return report;
}

void write_report(const CrosscheckReport& r, std::ostream& os) {
  for (const CheckResult& c : r.checks) {
    os << (c.skipped ? "SKIP" : c.passed ? "PASS" : "FAIL") << ' ' << c.name << " max_error="
       << num(c.max_error) << " tol=" << num(c.tolerance);
    if (!c.detail.empty()) os << " [" << c.detail << ']';
    os << '\n';
  }
}

void write_report_json(const CrosscheckReport& r, std::ostream& os) {
  nlohmann::json j = nlohmann::json::array();
  for (const CheckResult& c : r.checks) {
    j.push_back({{"name", c.name},
                 {"status", c.skipped ? "skip" : c.passed ? "pass" : "fail"},
                 {"max_error", std::isfinite(c.max_error) ? nlohmann::json(c.max_error) : nlohmann::json(nullptr)},
                 {"tolerance", c.tolerance},
                 {"detail", c.detail}});
  }
  os << nlohmann::json{{"checks", j}, {"passed", r.all_passed()}}.dump(1) << '\n';
}

}  // namespace qcd
