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

#include "qcd/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcd/error.hpp"
#include "qcd/random.hpp"

namespace qcd {

KrausChannel::KrausChannel(Index dim_in, Index dim_out, std::vector<ComplexMatrix> kraus_ops)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus_ops)) {
  if (dim_in < 1 || dim_out < 1) throw DomainError("channel dimensions must be positive");
  if (kraus_.empty()) throw DomainError("channel needs at least one Kraus operator");
  ComplexMatrix total = ComplexMatrix::Zero(dim_in, dim_in);
  for (const auto& k : kraus_) {
    if (k.rows() != dim_out || k.cols() != dim_in) {
      throw DimensionError("Kraus operator has shape " + std::to_string(k.rows()) + "x" +
                           std::to_string(k.cols()));
    }
    require_finite(k);
    total += k.adjoint() * k;
  }
  const double dev = (total - ComplexMatrix::Identity(dim_in, dim_in)).cwiseAbs().maxCoeff();
  if (dev > 1e-9) {
    throw DomainError("Kraus operators are not trace preserving (deviation " +
                      std::to_string(dev) + ")");
  }
}

KrausChannel KrausChannel::identity(Index d) {
  return KrausChannel(d, d, {ComplexMatrix::Identity(d, d)});
}

KrausChannel make_qec(Index d, double q) {
  if (d < 2) throw DomainError("make_qec: d must be at least 2");
  detail::require_probability(q, "q");
  std::vector<ComplexMatrix> ops;
  ComplexMatrix iso = ComplexMatrix::Zero(d + 1, d);
  iso.topRows(d).setIdentity();
  ops.push_back(std::sqrt(1.0 - q) * iso);
  for (Index j = 0; j < d; ++j) {
    ComplexMatrix k = ComplexMatrix::Zero(d + 1, d);
    k(d, j) = std::sqrt(q);
    ops.push_back(std::move(k));
  }
  return KrausChannel(d, d + 1, std::move(ops));
}

ComplexMatrix heisenberg_weyl(Index d, Index a, Index b) {
  ComplexMatrix w = ComplexMatrix::Zero(d, d);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(d);
  // X^a Z^b |j> = omega^{b j} |j + a>
  for (Index j = 0; j < d; ++j) {
    w((j + a) % d, j) = std::polar(1.0, step * static_cast<double>((b * j) % d));
  }
  return w;
}

KrausChannel make_qdc(Index d, double q) {
  if (d < 2) throw DomainError("make_qdc: d must be at least 2");
  detail::require_probability(q, "q");
  const double d2 = static_cast<double>(d * d);
  std::vector<ComplexMatrix> ops;
  ops.push_back(std::sqrt(1.0 - q + q / d2) * ComplexMatrix::Identity(d, d));
  for (Index a = 0; a < d; ++a) {
    for (Index b = 0; b < d; ++b) {
      if (a == 0 && b == 0) continue;
      ops.push_back(std::sqrt(q / d2) * heisenberg_weyl(d, a, b));
    }
  }
  return KrausChannel(d, d, std::move(ops));
}

KrausChannel make_qadc(double q) {
  detail::require_probability(q, "q");
  ComplexMatrix k0 = ComplexMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - q);
  ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
  k1(0, 1) = std::sqrt(q);
  return KrausChannel(2, 2, {k0, k1});
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.dim_in()) {
    throw DimensionError("apply: state dimension " + std::to_string(rho.dim()) +
                         " does not match channel input " + std::to_string(ch.dim_in()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(ch.dim_out(), ch.dim_out());
  for (const auto& k : ch.kraus_ops()) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix(std::move(out));
}

namespace {

ComplexMatrix choi_matrix(const std::vector<ComplexMatrix>& kraus, Index dim_in, Index dim_out) {
  const Index n = dim_out * dim_in;
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim_in));
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (const auto& k : kraus) {
    // (K (x) I) sum_l |l>|l>/sqrt(d): output index o, idler l -> o*dim_in + l.
    ComplexVector v = ComplexVector::Zero(n);
    for (Index l = 0; l < dim_in; ++l) {
      for (Index o = 0; o < dim_out; ++o) v(o * dim_in + l) = amp * k(o, l);
    }
    out += v * v.adjoint();
  }
  return out;
}

}  // namespace

DensityMatrix choi(const KrausChannel& ch) {
  return DensityMatrix(choi_matrix(ch.kraus_ops(), ch.dim_in(), ch.dim_out()));
}

SimulationError pbt_error_bound(Index d, long ports) {
  if (d < 2) throw DomainError("pbt_error_bound: d must be at least 2");
  if (ports < 1) throw DomainError("pbt_error_bound: need at least one port");
  const double dd = static_cast<double>(d);
  return {2.0 * dd * (dd - 1.0) / static_cast<double>(ports), ports,
          SimulationError::Kind::uniform_bound};
}

double default_xi(long ports) {
  if (ports < 1) throw DomainError("xi: need at least one port");
  return std::min(4.0 / static_cast<double>(ports), 2.0);
}

SimulationError qadc_pbt_error(double q, long ports, const XiFunction& xi) {
  detail::require_probability(q, "q");
  if (ports < 1) throw DomainError("qadc_pbt_error: need at least one port");
  const double x = xi(ports);
  if (!(x >= 0.0)) throw DomainError("xi(M) must be non-negative");
  const double bracket = (1.0 - q) / 2.0 + std::sqrt(1.0 - q);
  return {x * bracket, ports, SimulationError::Kind::qadc_specific};
}

bool tele_covariance_check(const KrausChannel& ch) {
  const Index din = ch.dim_in();
  const Index dout = ch.dim_out();
  const Index n = din * dout;
  const ComplexMatrix a = choi_matrix(ch.kraus_ops(), din, dout);
  const ComplexMatrix id_idler = ComplexMatrix::Identity(din, din);
  Rng rng(0x7e1ec0);

  for (Index ua = 0; ua < din; ++ua) {
    for (Index ub = 0; ub < din; ++ub) {
      const ComplexMatrix u = heisenberg_weyl(din, ua, ub);
      std::vector<ComplexMatrix> twisted;
      for (const auto& k : ch.kraus_ops()) twisted.push_back(k * u);
      const ComplexMatrix b = choi_matrix(twisted, din, dout);

      // Linear map V -> (V (x) I) A - B (V (x) I) on the dout^2 entries of V.
      ComplexMatrix lin(n * n, dout * dout);
      for (Index i = 0; i < dout; ++i) {
        for (Index j = 0; j < dout; ++j) {
          ComplexMatrix e = ComplexMatrix::Zero(dout, dout);
          e(i, j) = 1.0;
          const ComplexMatrix ve = tensor(e, id_idler);
          const ComplexMatrix img = ve * a - b * ve;
          lin.col(i * dout + j) = img.reshaped();
        }
      }
      Eigen::JacobiSVD<ComplexMatrix> svd(lin, Eigen::ComputeFullV);
      const RealVector& sv = svd.singularValues();
      const double scale = std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
      std::vector<Index> null_cols;
      for (Index c = 0; c < dout * dout; ++c) {
        const double s = c < sv.size() ? sv(c) : 0.0;
        if (s <= 1e-9 * scale) null_cols.push_back(c);
      }
      if (null_cols.empty()) return false;

      // A generic element of the intertwiner space is invertible iff any element is;
      // its unitary polar factor then intertwines as well.
      bool found = false;
      for (int attempt = 0; attempt < 3 && !found; ++attempt) {
        ComplexVector coeffs = gaussian_matrix(static_cast<Index>(null_cols.size()), 1, rng).col(0);
        ComplexVector vflat = ComplexVector::Zero(dout * dout);
        for (std::size_t c = 0; c < null_cols.size(); ++c) {
          vflat += coeffs(static_cast<Index>(c)) * svd.matrixV().col(null_cols[c]);
        }
        ComplexMatrix x(dout, dout);
        for (Index i = 0; i < dout; ++i) {
          for (Index j = 0; j < dout; ++j) x(i, j) = vflat(i * dout + j);
        }
        Eigen::JacobiSVD<ComplexMatrix> polar(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const RealVector& psv = polar.singularValues();
        if (psv(psv.size() - 1) <= 1e-8 * psv(0)) continue;
        const ComplexMatrix w = polar.matrixU() * polar.matrixV().adjoint();
        const ComplexMatrix wi = tensor(w, id_idler);
        const double resid = (wi * a * wi.adjoint() - b).cwiseAbs().maxCoeff();
        found = resid <= 1e-8;
      }
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace qcd
