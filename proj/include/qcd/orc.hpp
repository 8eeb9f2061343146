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

// Closed-form and combinatorial error probabilities for orthogonal replacement
// channels rho -> q rho_perp + (1-q) rho, specialized to erasure (QEC) and
// depolarizing (QDC) channels.
//
// Binary discrimination reduces to f_u. Channel position finding with m cells
// and u rounds reduces to h_m^u(q_B, q_T) = 1 - (1/m) sum_x g_w(x), where x runs
// over {0,1}^{u m} split into m contiguous blocks of u bits and g_w depends only
// on the smallest, largest and total block weights.

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qcd/discrimination.hpp"

namespace qcd {

/// C(n, k) as a double: exact integer arithmetic for n <= 50, log-gamma above.
double binomial(int n, int k);

/// 1/2 - (1/4) sum_k C(u,k) |q0^k (1-q0)^{u-k} - q1^k (1-q1)^{u-k}|.
double f_u(double q0, double q1, int u);

/// Ultimate adaptive error for two erasure channels; entanglement does not help.
BoundReport qec_binary(double q0, double q1, int u);

/// Two depolarizing channels on C^d. Entangled probes see replacement probability
/// (1 - 1/d^2) q, unentangled ones (1 - 1/d) q.
BoundReport qdc_binary(double q0, double q1, int u, int d, bool entangled);

struct OrcParams {
  double q_b = 0.0;
  double q_t = 0.0;
  int u = 1;
  int m = 2;
};

/// Enumeration guards; exceeding them raises GuardError naming the alternative.
inline constexpr int kMaxEnumerateBits = 24;
inline constexpr double kMaxWeightVectors = 1e7;

/// g_w for one bit string, from its block-weight statistics. Uses w_max when
/// q_T >= q_B (ties included) and w_min otherwise.
double g_w(const OrcParams& p, int w_min, int w_max, int total_weight);

/// Direct sum over all x in {0,1}^{um}; requires u m <= 24.
double h_mu_enumerate(const OrcParams& p);

/// Same sum for many (q_B, q_T) pairs sharing (m, u); the strings are walked once.
std::vector<double> h_mu_enumerate_batch(int m, int u,
                                         std::span<const std::pair<double, double>> qb_qt);

/// Sum over cyclic orbits of bit strings, weighting each orbit by |orbit|/m times the
/// largest un-simplified likelihood g(y, 0) in the orbit; requires u m <= 24.
double h_mu_orbits(const OrcParams& p);

/// Sum over block-weight vectors (w_0..w_{m-1}) with multiplicity prod C(u, w_l);
/// requires (u+1)^m <= 1e7.
double h_mu_weights(const OrcParams& p);

/// One-round closed form; q_B in {0,1} handled without division.
double h_m1_closed(double q_b, double q_t, int m);

/// h_m^u through whichever exact route fits the guards (closed form at u = 1,
/// weight vectors otherwise, string enumeration as the last resort).
double h_mu(const OrcParams& p);

/// Ultimate CPF error with erasure channels, h_m^u(q_B, q_T).
BoundReport qec_cpf(double q_b, double q_t, int m, int u);

/// CPF with depolarizing channels: h_m^u(c q_B, c q_T) with c = 1 - 1/d^2 (entangled)
/// or c = 1 - 1/d (unentangled).
BoundReport qdc_cpf(double q_b, double q_t, int m, int u, int d, bool entangled);

}  // namespace qcd
