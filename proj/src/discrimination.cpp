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

#include "qcd/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qcd/error.hpp"

namespace qcd {
namespace {

constexpr double kPinvCutoff = 1e-12;

ComplexMatrix inv_sqrt_on_support(const ComplexMatrix& a) {
  const HermitianEigen es = hermitian_eigen(a);
  RealVector d(es.values.size());
  for (Index i = 0; i < d.size(); ++i) {
    d(i) = es.values(i) > kPinvCutoff ? 1.0 / std::sqrt(es.values(i)) : 0.0;
  }
  return es.vectors * d.asDiagonal() * es.vectors.adjoint();
}

double min_eigenvalue(const ComplexMatrix& a) { return hermitian_eigenvalues(a).minCoeff(); }

}  // namespace

BoundReport BoundReport::make(double value, Kind kind, std::string method,
                              std::map<std::string, double> params) {
  if (!std::isfinite(value)) throw DomainError(method + ": non-finite bound value");
  if (kind == Kind::exact) {
    if (value < -1e-9 || value > 1.0 + 1e-9) {
      throw DomainError(method + ": exact probability out of range: " + std::to_string(value));
    }
    value = std::clamp(value, 0.0, 1.0);
  }
  BoundReport r;
  r.value = value;
  r.clamped_value = std::clamp(value, 0.0, 1.0);
  r.kind = kind;
  r.method = std::move(method);
  r.params = std::move(params);
  return r;
}

const char* to_string(BoundReport::Kind kind) {
  switch (kind) {
    case BoundReport::Kind::exact: return "exact";
    case BoundReport::Kind::lower: return "lower";
    case BoundReport::Kind::upper: return "upper";
  }
  return "?";
}

StateEnsemble::StateEnsemble(std::vector<DensityMatrix> states, std::vector<double> priors)
    : states_(std::move(states)), priors_(std::move(priors)) {
  if (states_.empty()) throw DomainError("ensemble needs at least one state");
  if (priors_.size() != states_.size()) {
    throw DimensionError("ensemble: one prior per state required");
  }
  for (const auto& s : states_) {
    if (s.dim() != states_.front().dim()) throw DimensionError("ensemble: mixed dimensions");
  }
  double total = 0.0;
  for (double p : priors_) {
    if (!(p >= 0.0)) throw DomainError("ensemble: negative prior");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("ensemble: priors do not sum to 1");
}

StateEnsemble StateEnsemble::equiprobable(std::vector<DensityMatrix> states) {
  const std::size_t n = states.size();
  if (n == 0) throw DomainError("ensemble needs at least one state");
  return StateEnsemble(std::move(states), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double Povm::validity_defect() const {
  if (elements.empty()) return std::numeric_limits<double>::infinity();
  const Index d = elements.front().rows();
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  double defect = 0.0;
  for (const auto& e : elements) {
    defect = std::max(defect, hermitian_deviation(e));
    defect = std::max(defect, -min_eigenvalue(e));
    total += e;
  }
  return std::max(defect, (total - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff());
}

BoundReport helstrom_binary(const DensityMatrix& rho0, const DensityMatrix& rho1, double p0) {
  if (rho0.dim() != rho1.dim()) throw DimensionError("helstrom_binary: dimension mismatch");
  detail::require_probability(p0, "p0");
  const double norm = trace_norm(p0 * rho0.matrix() - (1.0 - p0) * rho1.matrix());
  return BoundReport::make((1.0 - norm) / 2.0, BoundReport::Kind::exact, "helstrom_binary",
                           {{"p0", p0}});
}

BoundReport pgm_error(const StateEnsemble& e) {
  const Index d = e.dim();
  ComplexMatrix sigma = ComplexMatrix::Zero(d, d);
  for (std::size_t n = 0; n < e.size(); ++n) sigma += e.priors()[n] * e.states()[n].matrix();
  const ComplexMatrix s = inv_sqrt_on_support(sigma);
  double success = 0.0;
  for (std::size_t n = 0; n < e.size(); ++n) {
    const ComplexMatrix& rho = e.states()[n].matrix();
    const ComplexMatrix pi = s * (e.priors()[n] * rho) * s;
    success += e.priors()[n] * (pi * rho).trace().real();
  }
  return BoundReport::make(1.0 - success, BoundReport::Kind::upper, "pgm");
}

double pgm_error_gram(const ComplexMatrix& weighted_gram, std::span<const Index> offsets) {
  if (offsets.size() < 2 || offsets.back() != weighted_gram.rows()) {
    throw DimensionError("pgm_error_gram: offsets do not tile the Gram matrix");
  }
  // Same support cutoff as the pseudo-inverse of the averaged state.
  const ComplexMatrix root = support_sqrt(weighted_gram, kPinvCutoff);
  double success = 0.0;
  for (std::size_t n = 0; n + 1 < offsets.size(); ++n) {
    const Index r0 = offsets[n];
    const Index len = offsets[n + 1] - r0;
    success += root.block(r0, r0, len, len).squaredNorm();
  }
  return 1.0 - success;
}

BoundReport fidelity_upper_bound(const StateEnsemble& e) {
  double total = 0.0;
  for (std::size_t n = 0; n < e.size(); ++n) {
    for (std::size_t k = n + 1; k < e.size(); ++k) {
      total += std::sqrt(e.priors()[n] * e.priors()[k]) * fidelity(e.states()[n], e.states()[k]);
    }
  }
  return BoundReport::make(2.0 * total, BoundReport::Kind::upper, "fidelity_upper");
}

BoundReport fidelity_lower_bound(const StateEnsemble& e) {
  double total = 0.0;
  for (std::size_t n = 0; n < e.size(); ++n) {
    for (std::size_t k = n + 1; k < e.size(); ++k) {
      const double f = fidelity(e.states()[n], e.states()[k]);
      total += e.priors()[n] * e.priors()[k] * f * f;
    }
  }
  return BoundReport::make(total, BoundReport::Kind::lower, "fidelity_lower");
}

HelstromResult helstrom_iterative(const StateEnsemble& e, const HelstromOptions& options) {
  const CompressedStates comp = joint_support_compress(e.states());
  const Index d = comp.basis.rank;
  if (d > options.max_dim) {
    throw GuardError("helstrom_iterative: compressed dimension " + std::to_string(d) +
                     " exceeds the guard " + std::to_string(options.max_dim));
  }
  const std::size_t m = e.size();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  std::vector<ComplexMatrix> weighted(m);
  ComplexMatrix sigma = ComplexMatrix::Zero(d, d);
  for (std::size_t n = 0; n < m; ++n) {
    weighted[n] = e.priors()[n] * comp.states[n].matrix();
    sigma += weighted[n];
  }

  // Whatever the update leaves outside the support goes to element 0.
  auto complete = [&](std::vector<ComplexMatrix>& pi) {
    ComplexMatrix total = ComplexMatrix::Zero(d, d);
    for (const auto& p : pi) total += p;
    pi[0] += hermitize(id - total);
  };

  std::vector<ComplexMatrix> pi(m);
  {
    const ComplexMatrix s = inv_sqrt_on_support(sigma);
    for (std::size_t n = 0; n < m; ++n) pi[n] = hermitize(s * weighted[n] * s);
    complete(pi);
  }

  struct Evaluation {
    double error;
    double gap;
    double residual;
  };
  auto evaluate = [&](const std::vector<ComplexMatrix>& p) {
    ComplexMatrix upsilon = ComplexMatrix::Zero(d, d);
    for (std::size_t n = 0; n < m; ++n) upsilon += weighted[n] * p[n];
    const ComplexMatrix y = (upsilon + upsilon.adjoint()) * 0.5;
    double residual = std::numeric_limits<double>::infinity();
    double positive_parts = 0.0;
    for (std::size_t n = 0; n < m; ++n) {
      const RealVector ev = hermitian_eigenvalues(y - weighted[n]);
      residual = std::min(residual, ev.minCoeff());
      for (Index i = 0; i < ev.size(); ++i) positive_parts += std::max(0.0, -ev(i));
    }
    // Both Y + max(0,-residual) I and Y + sum_n (p_n rho_n - Y)_+ are dual feasible;
    // the optimum success exceeds the current one by at most the smaller trace increase.
    const double err = 1.0 - y.trace().real();
    const double gap = std::min(std::max(0.0, -residual) * static_cast<double>(d), positive_parts);
    return Evaluation{err, gap, residual};
  };

  Evaluation cur = evaluate(pi);
  std::vector<ComplexMatrix> best_pi = pi;
  Evaluation best = cur;
  int iter = 0;
  auto done = [&](const Evaluation& e) { return e.residual >= -options.tol || e.gap <= options.tol; };
  bool converged = done(cur);
  while (!converged && iter < options.max_iters) {
    ++iter;
    std::vector<ComplexMatrix> sandwiched(m);
    ComplexMatrix r = ComplexMatrix::Zero(d, d);
    for (std::size_t n = 0; n < m; ++n) {
      sandwiched[n] = weighted[n] * pi[n] * weighted[n];
      r += sandwiched[n];
    }
    const ComplexMatrix s = inv_sqrt_on_support(r);
    for (std::size_t n = 0; n < m; ++n) pi[n] = hermitize(s * sandwiched[n] * s);
    complete(pi);
    cur = evaluate(pi);
    if (cur.error + cur.gap < best.error + best.gap ||
        (cur.error + cur.gap == best.error + best.gap && cur.error < best.error)) {
      best = cur;
      best_pi = pi;
    }
    converged = done(cur);
    if (converged) {
      best = cur;
      best_pi = pi;
    }
  }

  HelstromResult out;
  out.report = BoundReport::make(
      std::clamp(best.error, 0.0, 1.0), BoundReport::Kind::exact, "helstrom_iterative",
      {{"tol", options.tol}, {"iterations", static_cast<double>(iter)}, {"gap", best.gap}});
  out.certificate_gap = best.gap;
  out.converged = converged;
  out.iterations = iter;
  const ComplexMatrix& v = comp.basis.isometry;
  const Index amb = comp.basis.ambient_dim;
  for (std::size_t n = 0; n < m; ++n) out.povm.elements.push_back(v * best_pi[n] * v.adjoint());
  out.povm.elements[0] += ComplexMatrix::Identity(amb, amb) - v * v.adjoint();
  return out;
}

double continuity_lower_bound(double p_h_reference, std::span<const double> priors,
                              std::span<const double> deltas) {
  if (priors.size() != deltas.size()) {
    throw DimensionError("continuity_lower_bound: priors and deltas differ in length");
  }
  double shift = 0.0;
  for (std::size_t n = 0; n < priors.size(); ++n) {
    if (!(deltas[n] >= 0.0)) throw DomainError("continuity_lower_bound: negative delta");
    if (!(priors[n] >= 0.0)) throw DomainError("continuity_lower_bound: negative prior");
    shift += priors[n] * deltas[n];
  }
  return p_h_reference - 0.5 * shift;
}

BoundReport gus_unitary_helstrom(double eta, int m) {
  detail::require_probability(eta, "eta");
  if (m < 2) throw DomainError("gus_unitary_helstrom: m must be at least 2");
  const double md = static_cast<double>(m);
  const double diff = std::sqrt(1.0 + (md - 1.0) * eta) - std::sqrt(1.0 - eta);
  return BoundReport::make((md - 1.0) / (md * md) * diff * diff, BoundReport::Kind::exact,
                           "gus_unitary", {{"eta", eta}, {"m", md}});
}

StateEnsemble cyclic_pure_ensemble(double eta, int m) {
  detail::require_probability(eta, "eta");
  if (m < 2) throw DomainError("cyclic_pure_ensemble: m must be at least 2");
  const ComplexMatrix gram = (1.0 - eta) * ComplexMatrix::Identity(m, m) +
                             eta * ComplexMatrix::Ones(m, m);
  const ComplexVector psi0 = psd_sqrt(gram).col(0);
  ComplexMatrix shift = ComplexMatrix::Zero(m, m);
  for (Index k = 0; k < m; ++k) shift((k + 1) % m, k) = 1.0;
  std::vector<DensityMatrix> states;
  ComplexVector psi = psi0;
  for (int n = 0; n < m; ++n) {
    states.push_back(DensityMatrix::pure(psi / psi.norm()));
    psi = shift * psi;
  }
  return StateEnsemble::equiprobable(std::move(states));
}

}  // namespace qcd
