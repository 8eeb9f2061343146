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

// Dense complex-matrix kernel: Kronecker products, Hermitian spectral
// decomposition, trace norm, Bures fidelity and joint-support compression.

#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qcd {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
// Hermitization that moves an entry by more than this is treated as a caller bug.
inline constexpr double kHermitizeRejectTol = 1e-8;
inline constexpr double kSupportTol = 1e-10;
inline constexpr Index kDefaultMaxSide = Index{1} << 20;

/// Throws DomainError if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& a);

/// max |a - a^dagger| over entries.
double hermitian_deviation(const ComplexMatrix& a);

/// (a + a^dagger)/2; rejects inputs whose deviation exceeds kHermitizeRejectTol.
ComplexMatrix hermitize(const ComplexMatrix& a);

/// Unit-trace positive semidefinite Hermitian matrix.
class DensityMatrix {
 public:
  /// Validates Hermiticity, trace and positivity at the k*Tol tolerances above.
  explicit DensityMatrix(ComplexMatrix m);

  /// |psi><psi|; psi must have unit norm within 1e-10.
  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(Index dim);
  /// Maximally entangled state on C^d (x) C^d, sum_l |l,l>/sqrt(d).
  static DensityMatrix max_entangled(Index d);
  /// F F^dagger. Positivity holds by construction so only the trace is checked.
  static DensityMatrix from_factor(const ComplexMatrix& factor);

  Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  // Tensor products of states are states; these skip the eigenvalue check.
  friend DensityMatrix tensor(const DensityMatrix&, const DensityMatrix&, Index);
  friend DensityMatrix tensor_power(const DensityMatrix&, int, Index);
  friend DensityMatrix tensor_all(std::span<const DensityMatrix>, Index);

  struct Trusted {};
  DensityMatrix(ComplexMatrix m, Trusted);

  ComplexMatrix matrix_;
};

/// Kronecker product, a-major: entry((i1,i2),(j1,j2)) = a(i1,j1) b(i2,j2).
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b,
                     Index max_side = kDefaultMaxSide);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b,
                     Index max_side = kDefaultMaxSide);
DensityMatrix tensor_power(const DensityMatrix& a, int copies, Index max_side = kDefaultMaxSide);
DensityMatrix tensor_all(std::span<const DensityMatrix> factors, Index max_side = kDefaultMaxSide);

struct HermitianEigen {
  RealVector values;  // ascending
  ComplexMatrix vectors;
};

/// Spectral decomposition after hermitize(). Real-symmetric input takes the real solver.
HermitianEigen hermitian_eigen(const ComplexMatrix& a);
RealVector hermitian_eigenvalues(const ComplexMatrix& a);

/// Square root of a PSD matrix; eigenvalues in [-kPsdTol, 0) are clamped to zero.
ComplexMatrix psd_sqrt(const ComplexMatrix& a);

/// Square root of a PSD matrix with eigenvalues at or below `cutoff` set to zero, so
/// rounding noise in the null space does not leak in at the square-root scale.
ComplexMatrix support_sqrt(const ComplexMatrix& a, double cutoff);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& a);

/// Bures fidelity tr sqrt(sqrt(rho) sigma sqrt(rho)), clamped to [0,1]. Evaluated as the
/// trace norm of sqrt(rho) sqrt(sigma), with eigenvalues below 1e-14 dropped from both roots.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Orthonormal basis (columns of `isometry`) for a subspace of C^ambient_dim.
struct SubspaceBasis {
  Index ambient_dim = 0;
  Index rank = 0;
  ComplexMatrix isometry;
};

struct CompressedStates {
  SubspaceBasis basis;
  std::vector<DensityMatrix> states;
};

/// Restricts every state to the span of all supports (eigenvalues above `support_tol`
/// of the summed state). The compressed states are V^dagger rho V for the isometry V.
CompressedStates joint_support_compress(std::span<const DensityMatrix> states,
                                        double support_tol = kSupportTol);

/// Factor F with rho = F F^dagger, keeping eigen-directions above `support_tol`.
ComplexMatrix psd_factor(const DensityMatrix& rho, double support_tol = kSupportTol);

/// Gram matrix of tensor-product states described by labels into a small set of
/// local states. State n is  locals[labels[n][0]] (x) locals[labels[n][1]] (x) ...
/// Its factor is the Kronecker product of the local factors, so the Gram blocks are
/// Kronecker products of local cross-Grams and no ambient-space vector is formed.
/// Column block n of the Gram belongs to state n; `weights[n]` scales the factor
/// of state n by sqrt(weights[n]).
struct ProductGram {
  ComplexMatrix gram;
  std::vector<Index> offsets;  // size n_states + 1
};

ProductGram product_gram(std::span<const DensityMatrix> locals,
                         const std::vector<std::vector<int>>& labels,
                         std::span<const double> weights, Index max_rank = 4096);

/// Compressed copies of the product states of product_gram(), expressed in an
/// orthonormal basis of their joint support. Never forms ambient-space vectors.
std::vector<DensityMatrix> compress_product_states(std::span<const DensityMatrix> locals,
                                                   const std::vector<std::vector<int>>& labels,
                                                   Index max_rank = 4096);

}  // namespace qcd
