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

#include "qcd/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qcd/error.hpp"

namespace qcd {
namespace {

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

bool is_real(const ComplexMatrix& a) { return a.imag().cwiseAbs().maxCoeff() == 0.0; }

}  // namespace

void require_finite(const ComplexMatrix& a) {
  if (!a.allFinite()) throw DomainError("matrix has non-finite entries");
}

double hermitian_deviation(const ComplexMatrix& a) {
  require_square(a, "hermitian_deviation");
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

ComplexMatrix hermitize(const ComplexMatrix& a) {
  const double dev = hermitian_deviation(a);
  if (dev > kHermitizeRejectTol) {
    throw DomainError("matrix is not Hermitian (deviation " + std::to_string(dev) + ")");
  }
  return (a + a.adjoint()) * 0.5;
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(ComplexMatrix m) {
  require_square(m, "DensityMatrix");
  require_finite(m);
  const double dev = hermitian_deviation(m);
  if (dev > kHermitianTol) {
    throw DomainError("density matrix not Hermitian (deviation " + std::to_string(dev) + ")");
  }
  matrix_ = (m + m.adjoint()) * 0.5;
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw DomainError("density matrix trace " + std::to_string(tr) + " differs from 1");
  }
  const double min_eig = hermitian_eigenvalues(matrix_).minCoeff();
  if (min_eig < -kPsdTol) {
    throw DomainError("density matrix has negative eigenvalue " + std::to_string(min_eig));
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix m, Trusted) {
  require_finite(m);
  matrix_ = hermitize(m);
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw DomainError("density matrix trace " + std::to_string(tr) + " differs from 1");
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  if (psi.size() == 0) throw DimensionError("pure state needs a non-empty vector");
  if (std::abs(psi.norm() - 1.0) > kTraceTol) {
    throw DomainError("pure state vector is not normalized");
  }
  return DensityMatrix(psi * psi.adjoint(), Trusted{});
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  if (dim < 1) throw DomainError("dimension must be positive");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim), Trusted{});
}

DensityMatrix DensityMatrix::max_entangled(Index d) {
  if (d < 1) throw DomainError("dimension must be positive");
  ComplexVector psi = ComplexVector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index l = 0; l < d; ++l) psi(l * d + l) = amp;
  return DensityMatrix(psi * psi.adjoint(), Trusted{});
}

DensityMatrix DensityMatrix::from_factor(const ComplexMatrix& factor) {
  return DensityMatrix(factor * factor.adjoint(), Trusted{});
}

// ---------------------------------------------------------------------------
// Products

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b, Index max_side) {
  const Index rows = a.rows() * b.rows();
  const Index cols = a.cols() * b.cols();
  if (rows > max_side || cols > max_side) {
    throw GuardError("tensor product of side " + std::to_string(std::max(rows, cols)) +
                     " exceeds the dimension guard " + std::to_string(max_side) +
                     "; use support compression or the analytic path");
  }
  ComplexMatrix out(rows, cols);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b, Index max_side) {
  return DensityMatrix(tensor(a.matrix(), b.matrix(), max_side), DensityMatrix::Trusted{});
}

DensityMatrix tensor_power(const DensityMatrix& a, int copies, Index max_side) {
  if (copies < 1) throw DomainError("tensor_power needs at least one copy");
  ComplexMatrix out = a.matrix();
  for (int k = 1; k < copies; ++k) out = tensor(out, a.matrix(), max_side);
  return DensityMatrix(std::move(out), DensityMatrix::Trusted{});
}

DensityMatrix tensor_all(std::span<const DensityMatrix> factors, Index max_side) {
  if (factors.empty()) throw DomainError("tensor_all needs at least one factor");
  ComplexMatrix out = factors.front().matrix();
  for (std::size_t k = 1; k < factors.size(); ++k) {
    out = tensor(out, factors[k].matrix(), max_side);
  }
  return DensityMatrix(std::move(out), DensityMatrix::Trusted{});
}

// ---------------------------------------------------------------------------
// Spectral helpers

HermitianEigen hermitian_eigen(const ComplexMatrix& a) {
  const ComplexMatrix h = hermitize(a);
  if (is_real(h)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.real());
    return {es.eigenvalues(), es.eigenvectors().cast<Complex>()};
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

RealVector hermitian_eigenvalues(const ComplexMatrix& a) {
  const ComplexMatrix h = hermitize(a);
  if (is_real(h)) {
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h.real(), Eigen::EigenvaluesOnly)
        .eigenvalues();
  }
  return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
  const HermitianEigen es = hermitian_eigen(a);
  RealVector roots(es.values.size());
  for (Index i = 0; i < es.values.size(); ++i) {
    const double v = es.values(i);
    if (v < -kPsdTol) {
      throw DomainError("psd_sqrt: eigenvalue " + std::to_string(v) + " is negative");
    }
    roots(i) = std::sqrt(std::max(v, 0.0));
  }
  return es.vectors * roots.asDiagonal() * es.vectors.adjoint();
}

ComplexMatrix support_sqrt(const ComplexMatrix& a, double cutoff) {
  const HermitianEigen es = hermitian_eigen(a);
  RealVector roots(es.values.size());
  for (Index i = 0; i < roots.size(); ++i) {
    const double v = es.values(i);
    if (v < -kPsdTol) {
      throw DomainError("support_sqrt: eigenvalue " + std::to_string(v) + " is negative");
    }
    roots(i) = v > cutoff ? std::sqrt(v) : 0.0;
  }
  return es.vectors * roots.asDiagonal() * es.vectors.adjoint();
}

namespace {

// Index sets of the connected components of the non-zero pattern of a Hermitian
// matrix; the matrix is block diagonal over them.
std::vector<std::vector<Index>> pattern_components(const ComplexMatrix& h) {
  const Index n = h.rows();
  std::vector<Index> parent(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  auto find = [&](Index i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
      parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
      i = parent[static_cast<std::size_t>(i)];
    }
    return i;
  };
  for (Index j = 0; j < n; ++j) {
    for (Index i = j + 1; i < n; ++i) {
      if (h(i, j) != Complex(0.0, 0.0)) {
        const Index a = find(i), b = find(j);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
      }
    }
  }
  std::vector<std::vector<Index>> groups(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) groups[static_cast<std::size_t>(find(i))].push_back(i);
  std::vector<std::vector<Index>> out;
  for (auto& g : groups) {
    if (!g.empty()) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

double trace_norm(const ComplexMatrix& a) {
  require_square(a, "trace_norm");
  require_finite(a);
  if (hermitian_deviation(a) > kHermitizeRejectTol) {
    return Eigen::BDCSVD<ComplexMatrix>(a).singularValues().sum();
  }
  const ComplexMatrix h = hermitize(a);
  const auto components = pattern_components(h);
  if (components.size() == 1) return hermitian_eigenvalues(h).cwiseAbs().sum();
  // Tensor powers of sparse Choi matrices split into many small blocks.
  double total = 0.0;
  for (const auto& c : components) {
    const Index k = static_cast<Index>(c.size());
    ComplexMatrix block(k, k);
    for (Index i = 0; i < k; ++i) {
      for (Index j = 0; j < k; ++j) block(i, j) = h(c[static_cast<std::size_t>(i)], c[static_cast<std::size_t>(j)]);
    }
    total += k == 1 ? std::abs(block(0, 0).real()) : hermitian_eigenvalues(block).cwiseAbs().sum();
  }
  return total;
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionError("fidelity: dimension mismatch " + std::to_string(rho.dim()) + " vs " +
                         std::to_string(sigma.dim()));
  }
  constexpr double kNoiseFloor = 1e-14;
  const ComplexMatrix product = support_sqrt(rho.matrix(), kNoiseFloor) * support_sqrt(sigma.matrix(), kNoiseFloor);
  const double f = Eigen::BDCSVD<ComplexMatrix>(product).singularValues().sum();
  return std::clamp(f, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Compression

CompressedStates joint_support_compress(std::span<const DensityMatrix> states,
                                        double support_tol) {
  if (states.empty()) throw DomainError("joint_support_compress: empty state list");
  const Index dim = states.front().dim();
  ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
  for (const auto& s : states) {
    if (s.dim() != dim) throw DimensionError("joint_support_compress: mixed dimensions");
    total += s.matrix();
  }
  const HermitianEigen es = hermitian_eigen(total);
  std::vector<Index> keep;
  for (Index i = 0; i < es.values.size(); ++i) {
    if (es.values(i) > support_tol) keep.push_back(i);
  }
  SubspaceBasis basis;
  basis.ambient_dim = dim;
  basis.rank = static_cast<Index>(keep.size());
  basis.isometry.resize(dim, basis.rank);
  // Largest eigen-directions first.
  for (Index c = 0; c < basis.rank; ++c) {
    basis.isometry.col(c) = es.vectors.col(keep[keep.size() - 1 - static_cast<std::size_t>(c)]);
  }
  CompressedStates out{std::move(basis), {}};
  out.states.reserve(states.size());
  for (const auto& s : states) {
    out.states.emplace_back(
        ComplexMatrix(out.basis.isometry.adjoint() * s.matrix() * out.basis.isometry));
  }
  return out;
}

ComplexMatrix psd_factor(const DensityMatrix& rho, double support_tol) {
  const HermitianEigen es = hermitian_eigen(rho.matrix());
  std::vector<Index> keep;
  for (Index i = es.values.size() - 1; i >= 0; --i) {
    if (es.values(i) > support_tol) keep.push_back(i);
  }
  ComplexMatrix f(rho.dim(), static_cast<Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    f.col(static_cast<Index>(c)) = es.vectors.col(keep[c]) * std::sqrt(es.values(keep[c]));
  }
  return f;
}

ProductGram product_gram(std::span<const DensityMatrix> locals,
                         const std::vector<std::vector<int>>& labels,
                         std::span<const double> weights, Index max_rank) {
  if (locals.empty() || labels.empty()) throw DomainError("product_gram: empty input");
  if (weights.size() != labels.size()) {
    throw DimensionError("product_gram: one weight per product state required");
  }
  const std::size_t n_local = locals.size();
  const std::size_t n_slots = labels.front().size();
  std::vector<ComplexMatrix> factors;
  factors.reserve(n_local);
  for (const auto& l : locals) {
    if (l.dim() != locals.front().dim()) throw DimensionError("product_gram: mixed local dims");
    factors.push_back(psd_factor(l));
  }
  std::vector<ComplexMatrix> cross(n_local * n_local);
  for (std::size_t a = 0; a < n_local; ++a) {
    for (std::size_t b = 0; b < n_local; ++b) {
      cross[a * n_local + b] = factors[a].adjoint() * factors[b];
    }
  }

  ProductGram out;
  out.offsets.push_back(0);
  for (const auto& lab : labels) {
    if (lab.size() != n_slots || n_slots == 0) {
      throw DimensionError("product_gram: every state needs the same non-zero slot count");
    }
    Index r = 1;
    for (int k : lab) {
      if (k < 0 || static_cast<std::size_t>(k) >= n_local) {
        throw DomainError("product_gram: label out of range");
      }
      r *= factors[static_cast<std::size_t>(k)].cols();
      if (r > max_rank) break;
    }
    if (out.offsets.back() + r > max_rank) {
      throw GuardError("product_gram: stacked rank exceeds the guard " +
                       std::to_string(max_rank) + "; reduce copies or cells");
    }
    out.offsets.push_back(out.offsets.back() + r);
  }

  const Index total = out.offsets.back();
  out.gram = ComplexMatrix::Zero(total, total);
  for (std::size_t n = 0; n < labels.size(); ++n) {
    for (std::size_t p = n; p < labels.size(); ++p) {
      ComplexMatrix block = cross[static_cast<std::size_t>(labels[n][0]) * n_local +
                                  static_cast<std::size_t>(labels[p][0])];
      for (std::size_t k = 1; k < n_slots; ++k) {
        block = tensor(block, cross[static_cast<std::size_t>(labels[n][k]) * n_local +
                                    static_cast<std::size_t>(labels[p][k])]);
      }
      block *= std::sqrt(weights[n] * weights[p]);
      const Index r0 = out.offsets[n], c0 = out.offsets[p];
      out.gram.block(r0, c0, block.rows(), block.cols()) = block;
      if (p != n) out.gram.block(c0, r0, block.cols(), block.rows()) = block.adjoint();
    }
  }
  return out;
}

std::vector<DensityMatrix> compress_product_states(std::span<const DensityMatrix> locals,
                                                   const std::vector<std::vector<int>>& labels,
                                                   Index max_rank) {
  const std::vector<double> ones(labels.size(), 1.0);
  const ProductGram pg = product_gram(locals, labels, ones, max_rank);
  // With stacked factor V = [F_0 ... F_{m-1}] and V^dagger V = E D E^dagger, the
  // isometry V E D^{-1/2} maps V to D^{1/2} E^dagger, so no ambient vector is needed.
  const HermitianEigen es = hermitian_eigen(pg.gram);
  const double cutoff = 1e-14 * std::max(1.0, pg.gram.trace().real());
  std::vector<Index> keep;
  for (Index i = es.values.size() - 1; i >= 0; --i) {
    if (es.values(i) > cutoff) keep.push_back(i);
  }
  const Index rank = static_cast<Index>(keep.size());
  ComplexMatrix coords(rank, pg.gram.cols());
  for (Index r = 0; r < rank; ++r) {
    const Index i = keep[static_cast<std::size_t>(r)];
    coords.row(r) = std::sqrt(es.values(i)) * es.vectors.col(i).adjoint();
  }
  std::vector<DensityMatrix> out;
  out.reserve(labels.size());
  for (std::size_t n = 0; n < labels.size(); ++n) {
    const Index c0 = pg.offsets[n];
    out.push_back(DensityMatrix::from_factor(coords.middleCols(c0, pg.offsets[n + 1] - c0)));
  }
  return out;
}

}  // namespace qcd
