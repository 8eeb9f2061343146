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

#include "qcd/qadc.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qcd/error.hpp"
#include "qcd/orc.hpp"

namespace qcd {
namespace {

std::vector<DensityMatrix> compressed_pair(double q0, double q1, int u) {
  detail::require_probability(q0, "q0");
  detail::require_probability(q1, "q1");
  if (u < 1) throw DomainError("rounds u must be at least 1");
  const std::vector<DensityMatrix> locals{choi(make_qadc(q0)), choi(make_qadc(q1))};
  const std::vector<std::vector<int>> labels{std::vector<int>(static_cast<std::size_t>(u), 0),
                                             std::vector<int>(static_cast<std::size_t>(u), 1)};
  return compress_product_states(locals, labels);
}

double likelihood(const OutcomeDistribution& p, const std::array<int, 4>& counts) {
  double l = 1.0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (counts[i] > 0) l *= std::pow(p[i], counts[i]);
  }
  return l;
}

}  // namespace

double qadc_choi_fidelity(double q0, double q1) {
  detail::require_probability(q0, "q0");
  detail::require_probability(q1, "q1");
  return std::min(1.0, (1.0 + std::sqrt((1.0 - q0) * (1.0 - q1)) + std::sqrt(q0 * q1)) / 2.0);
}

FvgBounds fvg_sandwich(double f, int u) {
  if (!(f >= 0.0 && f <= 1.0)) throw DomainError("fvg_sandwich: F must lie in [0,1]");
  if (u < 1) throw DomainError("fvg_sandwich: u must be at least 1");
  const double fu = std::pow(f, u);
  return {(1.0 - std::sqrt(std::max(0.0, 1.0 - fu * fu))) / 2.0, fu / 2.0};
}

BoundReport qadc_adaptive_lb(double q0, double q1, int u, long ports, const XiFunction& xi) {
  if (u < 1) throw DomainError("qadc_adaptive_lb: u must be at least 1");
  const double f = qadc_choi_fidelity(q0, q1);
  const double delta = qadc_pbt_error(q0, ports, xi).value + qadc_pbt_error(q1, ports, xi).value;
  const double f_pow = std::pow(f, 2.0 * u * static_cast<double>(ports));
  const double value = (1.0 - u * delta - std::sqrt(std::max(0.0, 1.0 - f_pow))) / 2.0;
  return BoundReport::make(value, BoundReport::Kind::lower, "qadc_adaptive_lb",
                           {{"u", u}, {"M", static_cast<double>(ports)}, {"delta", delta}});
}

MOptimizationResult qadc_adaptive_lb_optimized(double q0, double q1, int u, const XiFunction& xi,
                                               MRange range) {
  return optimize_over_M(
      [&](long mm) { return qadc_adaptive_lb(q0, q1, u, mm, xi).value; }, range);
}

MOptimizationResult qadc_cpf_adaptive_lb_optimized(double q_b, double q_t, int m, int u,
                                                   const XiFunction& xi, MRange range) {
  const double f = qadc_choi_fidelity(q_b, q_t);
  return optimize_over_M(
      [&](long mm) {
        const double delta =
            cpf_sim_error(qadc_pbt_error(q_b, mm, xi), qadc_pbt_error(q_t, mm, xi), m);
        return cpf_fidelity_lb(f, m, u, mm, delta).value;
      },
      range);
}

BoundReport qadc_binary_helstrom(double q0, double q1, int u) {
  const auto states = compressed_pair(q0, q1, u);
  BoundReport r = helstrom_binary(states[0], states[1]);
  r.method = "qadc_helstrom";
  r.params = {{"q0", q0}, {"q1", q1}, {"u", u}};
  return r;
}

BoundReport qadc_binary_pgm(double q0, double q1, int u) {
  BoundReport r = pgm_error(StateEnsemble::equiprobable(compressed_pair(q0, q1, u)));
  r.method = "qadc_pgm";
  r.params = {{"q0", q0}, {"q1", q1}, {"u", u}};
  return r;
}

ComplexMatrix nulling_unitary(double q) {
  detail::require_probability(q, "q");
  const double a = std::sqrt((1.0 - q) / (2.0 - q));
  const double b = 1.0 / std::sqrt(2.0 - q);
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  u(0, 0) = -a;
  u(0, 3) = b;
  u(1, 2) = 1.0;
  u(2, 0) = b;
  u(2, 3) = a;
  u(3, 1) = 1.0;
  return u;
}

OutcomeDistribution::OutcomeDistribution(std::array<double, 4> probs) : probs_(probs) {
  double total = 0.0;
  for (double& p : probs_) {
    if (!std::isfinite(p) || p < -1e-12) {
      throw DomainError("outcome distribution has negative entry " + std::to_string(p));
    }
    p = std::max(p, 0.0);
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("outcome distribution sums to " + std::to_string(total));
  }
  for (double& p : probs_) p /= total;
}

OutcomeDistribution nulling_outcome_dist(double q_applied, double q_actual) {
  detail::require_probability(q_applied, "q_applied");
  detail::require_probability(q_actual, "q_actual");
  const double q = q_applied, qp = q_actual;
  const double q00 = (2.0 - q - qp - 2.0 * std::sqrt((1.0 - q) * (1.0 - qp))) / (4.0 - 2.0 * q);
  return OutcomeDistribution({q00, 0.0, 1.0 - qp / 2.0 - q00, qp / 2.0});
}

const char* to_string(NullingVariant v) {
  switch (v) {
    case NullingVariant::apply_q0: return "apply_q0";
    case NullingVariant::apply_q1: return "apply_q1";
    case NullingVariant::apply_min: return "apply_min";
    case NullingVariant::apply_max: return "apply_max";
  }
  return "?";
}

double nulling_error(double q0, double q1, int u, NullingVariant variant) {
  detail::require_probability(q0, "q0");
  detail::require_probability(q1, "q1");
  if (u < 1) throw DomainError("nulling_error: u must be at least 1");
  double q = q0;
  switch (variant) {
    case NullingVariant::apply_q0: q = q0; break;
    case NullingVariant::apply_q1: q = q1; break;
    case NullingVariant::apply_min: q = std::min(q0, q1); break;
    case NullingVariant::apply_max: q = std::max(q0, q1); break;
  }
  const OutcomeDistribution p0 = nulling_outcome_dist(q, q0);
  const OutcomeDistribution p1 = nulling_outcome_dist(q, q1);
  double err = 0.0;
  std::array<int, 4> n{};
  for (n[0] = 0; n[0] <= u; ++n[0]) {
    for (n[1] = 0; n[0] + n[1] <= u; ++n[1]) {
      for (n[2] = 0; n[0] + n[1] + n[2] <= u; ++n[2]) {
        n[3] = u - n[0] - n[1] - n[2];
        const double mult = binomial(u, n[0]) * binomial(u - n[0], n[1]) *
                            binomial(u - n[0] - n[1], n[2]);
        err += mult * std::min(likelihood(p0, n), likelihood(p1, n));
      }
    }
  }
  return 0.5 * err;
}

}  // namespace qcd
