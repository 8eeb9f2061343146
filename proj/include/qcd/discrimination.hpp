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

// State-discrimination error probabilities: exact binary Helstrom, an iterative
// multi-hypothesis Helstrom solver with a dual certificate, the pretty-good
// measurement, and fidelity-based bounds.

#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "qcd/matrix.hpp"

namespace qcd {

/// A computed probability. `value` is the raw number (lower bounds may be negative);
/// `clamped_value` is the same number pushed into [0,1].
struct BoundReport {
  enum class Kind { exact, lower, upper };

  double value = 0.0;
  double clamped_value = 0.0;
  Kind kind = Kind::exact;
  std::string method;
  std::map<std::string, double> params;

  static BoundReport make(double value, Kind kind, std::string method,
                          std::map<std::string, double> params = {});
  bool clamped() const { return value != clamped_value; }
};

const char* to_string(BoundReport::Kind kind);

/// States over one Hilbert space with prior probabilities.
class StateEnsemble {
 public:
  /// Priors must be non-negative and sum to 1 within 1e-12.
  StateEnsemble(std::vector<DensityMatrix> states, std::vector<double> priors);
  static StateEnsemble equiprobable(std::vector<DensityMatrix> states);

  std::size_t size() const { return states_.size(); }
  Index dim() const { return states_.front().dim(); }
  const std::vector<DensityMatrix>& states() const { return states_; }
  const std::vector<double>& priors() const { return priors_; }

 private:
  std::vector<DensityMatrix> states_;
  std::vector<double> priors_;
};

struct Povm {
  std::vector<ComplexMatrix> elements;

  /// Largest violation of positivity or completeness.
  double validity_defect() const;
};

/// (1 - ||p0 rho0 - (1-p0) rho1||_1) / 2.
BoundReport helstrom_binary(const DensityMatrix& rho0, const DensityMatrix& rho1, double p0 = 0.5);

/// Error of the square-root measurement Sigma^{-1/2} p_n rho_n Sigma^{-1/2}.
BoundReport pgm_error(const StateEnsemble& e);

/// PGM error from the Gram matrix of prior-weighted factors (p_n rho_n = W_n W_n^dagger,
/// G = [W_0 .. W_{m-1}]^dagger [W_0 .. W_{m-1}]). Column block n spans
/// [offsets[n], offsets[n+1]). Success probability is sum_n ||(sqrt G)_{nn}||_F^2.
double pgm_error_gram(const ComplexMatrix& weighted_gram, std::span<const Index> offsets);

/// 2 sum_{n'>n} sqrt(p_n' p_n) F(rho_n', rho_n).
BoundReport fidelity_upper_bound(const StateEnsemble& e);

/// sum_{n'>n} p_n' p_n F^2(rho_n', rho_n).
BoundReport fidelity_lower_bound(const StateEnsemble& e);

struct HelstromOptions {
  double tol = 1e-8;
  int max_iters = 5000;
  Index max_dim = 256;  // after joint-support compression
};

struct HelstromResult {
  BoundReport report;
  Povm povm;
  /// The true minimum error lies in [report.value - certificate_gap, report.value].
  double certificate_gap = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Fixed-point POVM iteration seeded from the PGM, stopped by the optimality residual
/// min_n lambda_min(Y - p_n rho_n) >= -tol with Y = sum_n p_n rho_n Pi_n (Hermitized), or
/// once the certificate gap drops to tol.
HelstromResult helstrom_iterative(const StateEnsemble& e, const HelstromOptions& options = {});

/// p_h_reference - (1/2) sum_n p_n delta_n.
double continuity_lower_bound(double p_h_reference, std::span<const double> priors,
                              std::span<const double> deltas);

/// Minimum error for m equiprobable pure states with all pairwise overlaps equal to eta:
/// ((m-1)/m^2) [sqrt(1+(m-1) eta) - sqrt(1-eta)]^2.
BoundReport gus_unitary_helstrom(double eta, int m);

/// m equiprobable pure states psi_n = S^n psi_0 in C^m, S the cyclic shift, with
/// <psi_n|psi_k> = eta for n != k (psi_0 is column 0 of sqrt((1-eta) I + eta J)).
StateEnsemble cyclic_pure_ensemble(double eta, int m);

}  // namespace qcd
