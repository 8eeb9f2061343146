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

// Channel position finding (CPF): m cells, one of which holds the target channel
// and the rest the background channel, probed u times. Builds the Choi-level
// ensembles and composes the adaptive lower bounds with simulation-error budgets.

#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "qcd/channels.hpp"
#include "qcd/discrimination.hpp"

namespace qcd {

struct CpfSpec {
  KrausChannel background;
  KrausChannel target;
  int m = 2;
  int u = 1;
};

/// Throws unless the channels share dimensions, m >= 2 and u >= 1.
void validate(const CpfSpec& spec);

/// Side-length guard for explicit CPF ensembles.
inline constexpr Index kMaxCpfDim = 4096;

/// Equiprobable ensemble of multi-channel Choi matrices. State n carries the target
/// Choi in slot n and background Chois elsewhere, slots in ascending order, each
/// slot ordered (output, idler). The cyclic shift moving slot k to slot k+1 maps
/// state n to state n+1. Only one use is included (spec.u is ignored).
StateEnsemble build_cpf_choi_ensemble(const CpfSpec& spec, Index max_dim = kMaxCpfDim);

/// The u-copy ensemble {rho_n^{(x)u}, 1/m} restricted to its joint support. Built from
/// local Choi factors, so the ambient (d_out d_in)^{m u} space is never formed.
StateEnsemble cpf_compressed_ensemble(const CpfSpec& spec, Index max_rank = 4096);

/// (m-1) delta_B + delta_T.
double cpf_sim_error(const SimulationError& delta_b, const SimulationError& delta_t, int m);

/// p_h - u delta_avg / 2.
BoundReport theorem1_lower_bound(double p_h_choi_tensor, int u, double delta_avg);

/// sum_{k'>k} p_k' p_k F^{2uM}(rho_k', rho_k) - u delta_avg / 2 on single-use states.
BoundReport general_fidelity_lb(const StateEnsemble& e, int u, long ports, double delta_avg);

/// ((m-1)/2m) F^{4uM} - u delta_avg / 2, with F the target/background Choi fidelity.
BoundReport cpf_fidelity_lb(double f_choi, int m, int u, long ports, double delta_avg);

/// ((m-1)/2m) F^{4u}: lower bound on the non-adaptive Helstrom error.
BoundReport cpf_nonadaptive_fidelity_lb(double f_choi, int m, int u);

struct MOptimizationResult {
  long best_m = 1;
  double best_value = 0.0;
  std::vector<std::pair<long, double>> grid;  // every evaluated point, ascending M
};

struct MRange {
  long min = 1;
  long max = 1000000;
};

/// Maximizes bound(M) over integers in `range`: a geometric grid of about 200 points,
/// then an integer scan between the grid neighbours of the best point. Ties go to
/// the smaller M.
MOptimizationResult optimize_over_M(const std::function<double(long)>& bound, MRange range = {});

/// PGM error on the u-copy CPF ensemble. Uses the cyclic symmetry: the Gram matrix of
/// the factors is block circulant, so its square root comes from m blocks of the
/// single-state rank instead of one matrix of m times that size.
BoundReport cpf_pgm_upper(const CpfSpec& spec, Index max_rank = 4096);

/// Same quantity through the full Gram matrix; slower, kept as an independent route.
BoundReport cpf_pgm_upper_gram(const CpfSpec& spec, Index max_rank = 4096);

}  // namespace qcd
