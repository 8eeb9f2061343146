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

// Binary discrimination of qubit amplitude-damping channels A_q: fidelity
// bounds, the adaptive lower bound, multi-copy Helstrom/PGM on the compressed
// Choi tensor powers, and the nulling receiver.

#pragma once

#include <array>

#include "qcd/channels.hpp"
#include "qcd/cpf.hpp"
#include "qcd/discrimination.hpp"

namespace qcd {

/// [1 + sqrt((1-q0)(1-q1)) + sqrt(q0 q1)] / 2, the fidelity of the two Choi matrices.
double qadc_choi_fidelity(double q0, double q1);

struct FvgBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Helstrom bounds for u copies from the single-copy fidelity:
/// lower = (1 - sqrt(1 - F^{2u}))/2, upper = F^u / 2.
FvgBounds fvg_sandwich(double f, int u);

/// (1 - u D_M - sqrt(1 - F^{2uM})) / 2 with D_M = Delta_{q0,M} + Delta_{q1,M}.
BoundReport qadc_adaptive_lb(double q0, double q1, int u, long ports,
                             const XiFunction& xi = default_xi);

/// qadc_adaptive_lb maximized over M.
MOptimizationResult qadc_adaptive_lb_optimized(double q0, double q1, int u,
                                               const XiFunction& xi = default_xi,
                                               MRange range = {});

/// Adaptive CPF lower bound with amplitude-damping background q_b and target q_t,
/// maximized over M: ((m-1)/2m) F^{4uM} - u [(m-1) D_B + D_T] / 2.
MOptimizationResult qadc_cpf_adaptive_lb_optimized(double q_b, double q_t, int m, int u,
                                                   const XiFunction& xi = default_xi,
                                                   MRange range = {});

/// Exact Helstrom error between rho_{A_q0}^{(x)u} and rho_{A_q1}^{(x)u}, equal priors,
/// evaluated on the joint support (rank at most 2^{u+1}).
BoundReport qadc_binary_helstrom(double q0, double q1, int u);

/// PGM error on the same pair.
BoundReport qadc_binary_pgm(double q0, double q1, int u);

/// The 4x4 unitary that diagonalizes rho_{A_q} with diagonal {0, 0, 1 - q/2, q/2}.
ComplexMatrix nulling_unitary(double q);

/// Four-outcome probability vector; entries >= -1e-12 and summing to 1 within 1e-12,
/// renormalized after tiny negatives are clipped.
class OutcomeDistribution {
 public:
  explicit OutcomeDistribution(std::array<double, 4> probs);
  const std::array<double, 4>& probs() const { return probs_; }
  double operator[](std::size_t i) const { return probs_[i]; }

 private:
  std::array<double, 4> probs_;
};

/// Diagonal of U_{q_applied} rho_{A_{q_actual}} U_{q_applied}^dagger in closed form:
/// {q00, 0, 1 - q'/2 - q00, q'/2}, q00 = (2 - q - q' - 2 sqrt((1-q)(1-q'))) / (4 - 2q).
OutcomeDistribution nulling_outcome_dist(double q_applied, double q_actual);

enum class NullingVariant { apply_q0, apply_q1, apply_min, apply_max };

const char* to_string(NullingVariant v);

/// Error of the receiver that applies one nulling unitary to every Choi copy, measures
/// in the computational basis and decides by maximum likelihood (ties to hypothesis 0).
/// Exact sum over the C(u+3,3) outcome count vectors.
double nulling_error(double q0, double q1, int u, NullingVariant variant);

}  // namespace qcd
