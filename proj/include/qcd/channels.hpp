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

// Channel families (erasure, depolarizing, amplitude damping), Choi matrices
// and port-based-teleportation simulation-error budgets.

#pragma once

#include <functional>
#include <vector>

#include "qcd/matrix.hpp"

namespace qcd {

/// CPTP map given by Kraus operators of shape dim_out x dim_in.
class KrausChannel {
 public:
  /// Validates shapes and sum K^dagger K = I within 1e-9.
  KrausChannel(Index dim_in, Index dim_out, std::vector<ComplexMatrix> kraus_ops);

  static KrausChannel identity(Index d);

  Index dim_in() const { return dim_in_; }
  Index dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus_ops() const { return kraus_; }

 private:
  Index dim_in_;
  Index dim_out_;
  std::vector<ComplexMatrix> kraus_;
};

/// Erasure channel q|e><e| + (1-q) rho on C^d -> C^{d+1}; the flag |e> is the last basis vector.
KrausChannel make_qec(Index d, double q);

/// Depolarizing channel q I/d + (1-q) rho, realized with Heisenberg-Weyl Kraus operators.
KrausChannel make_qdc(Index d, double q);

/// Qubit amplitude damping: K0 = |0><0| + sqrt(1-q)|1><1|, K1 = sqrt(q)|0><1|.
KrausChannel make_qadc(double q);

/// Generalized Pauli X^a Z^b on C^d.
ComplexMatrix heisenberg_weyl(Index d, Index a, Index b);

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

/// (ch (x) id)(zeta) with the channel output factor first and the idler second.
DensityMatrix choi(const KrausChannel& ch);

struct SimulationError {
  enum class Kind { uniform_bound, qadc_specific, exact_zero };
  double value = 0.0;
  long ports = 1;
  Kind kind = Kind::uniform_bound;
};

/// 2 d (d-1) / M, valid for any channel of input dimension d.
SimulationError pbt_error_bound(Index d, long ports);

/// Port-dependent constant of the amplitude-damping simulation error.
using XiFunction = std::function<double(long)>;

/// min(4/M, 2): the qubit uniform bound capped at the diamond-norm ceiling.
double default_xi(long ports);

/// xi(M) [(1-q)/2 + sqrt(1-q)].
SimulationError qadc_pbt_error(double q, long ports, const XiFunction& xi = default_xi);

/// True iff every Heisenberg-Weyl conjugation of the input can be undone by some unitary
/// on the output: ch(U rho U^dagger) = V ch(rho) V^dagger. Decided on the Choi matrix.
bool tele_covariance_check(const KrausChannel& ch);

}  // namespace qcd
