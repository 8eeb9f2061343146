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

#include "qcd/cpf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcd/error.hpp"

namespace qcd {
namespace {

// Eigenvalue cutoff for square roots of the weighted Gram blocks; matches the
// pseudo-inverse cutoff of the direct PGM.
constexpr double kGramCutoff = 1e-12;

// Labels for rho_n^{(x)u}: slot c*m + k holds the target (1) iff k == n.
std::vector<std::vector<int>> copy_labels(int m, int u) {
  std::vector<std::vector<int>> labels(static_cast<std::size_t>(m));
  for (int n = 0; n < m; ++n) {
    for (int c = 0; c < u; ++c) {
      for (int k = 0; k < m; ++k) labels[static_cast<std::size_t>(n)].push_back(k == n ? 1 : 0);
    }
  }
  return labels;
}

double require_fidelity(double f) {
  if (!(f >= 0.0 && f <= 1.0)) {
    throw DomainError("fidelity must lie in [0,1], got " + std::to_string(f));
  }
  return f;
}

}  // namespace

void validate(const CpfSpec& spec) {
  if (spec.m < 2) throw DomainError("CPF needs m >= 2 cells");
  if (spec.u < 1) throw DomainError("CPF needs u >= 1 rounds");
  if (spec.background.dim_in() != spec.target.dim_in() ||
      spec.background.dim_out() != spec.target.dim_out()) {
    throw DimensionError("CPF background and target channels differ in dimensions");
  }
}

StateEnsemble build_cpf_choi_ensemble(const CpfSpec& spec, Index max_dim) {
  validate(spec);
  const DensityMatrix rb = choi(spec.background);
  const DensityMatrix rt = choi(spec.target);
  double total = 1.0;
  for (int k = 0; k < spec.m; ++k) total *= static_cast<double>(rb.dim());
  if (total > static_cast<double>(max_dim)) {
    throw GuardError("CPF ensemble side " + std::to_string(total) + " exceeds the guard " +
                     std::to_string(max_dim) +
                     "; use the analytic CPF formulas or cpf_compressed_ensemble");
  }
  std::vector<DensityMatrix> states;
  for (int n = 0; n < spec.m; ++n) {
    std::vector<DensityMatrix> slots;
    for (int k = 0; k < spec.m; ++k) slots.push_back(k == n ? rt : rb);
    states.push_back(tensor_all(slots, max_dim));
  }
  return StateEnsemble::equiprobable(std::move(states));
}

StateEnsemble cpf_compressed_ensemble(const CpfSpec& spec, Index max_rank) {
  validate(spec);
  const std::vector<DensityMatrix> locals{choi(spec.background), choi(spec.target)};
  return StateEnsemble::equiprobable(
      compress_product_states(locals, copy_labels(spec.m, spec.u), max_rank));
}

double cpf_sim_error(const SimulationError& delta_b, const SimulationError& delta_t, int m) {
  if (m < 2) throw DomainError("cpf_sim_error: m must be at least 2");
  return static_cast<double>(m - 1) * delta_b.value + delta_t.value;
}

BoundReport theorem1_lower_bound(double p_h_choi_tensor, int u, double delta_avg) {
  if (!(delta_avg >= 0.0)) throw DomainError("theorem1_lower_bound: negative simulation error");
  if (u < 1) throw DomainError("theorem1_lower_bound: u must be at least 1");
  return BoundReport::make(p_h_choi_tensor - u * delta_avg / 2.0, BoundReport::Kind::lower,
                           "simulation_lower_bound", {{"u", u}, {"delta", delta_avg}});
}

BoundReport general_fidelity_lb(const StateEnsemble& e, int u, long ports, double delta_avg) {
  if (u < 1 || ports < 1) throw DomainError("general_fidelity_lb: u and M must be positive");
  if (!(delta_avg >= 0.0)) throw DomainError("general_fidelity_lb: negative simulation error");
  const double power = 2.0 * u * static_cast<double>(ports);
  double total = 0.0;
  for (std::size_t n = 0; n < e.size(); ++n) {
    for (std::size_t k = n + 1; k < e.size(); ++k) {
      const double f = fidelity(e.states()[n], e.states()[k]);
      total += e.priors()[n] * e.priors()[k] * std::pow(f, power);
    }
  }
  return BoundReport::make(total - u * delta_avg / 2.0, BoundReport::Kind::lower,
                           "general_fidelity_lb",
                           {{"u", u}, {"M", static_cast<double>(ports)}, {"delta", delta_avg}});
}

BoundReport cpf_fidelity_lb(double f_choi, int m, int u, long ports, double delta_avg) {
  require_fidelity(f_choi);
  if (m < 2 || u < 1 || ports < 1) throw DomainError("cpf_fidelity_lb: bad m, u or M");
  if (!(delta_avg >= 0.0)) throw DomainError("cpf_fidelity_lb: negative simulation error");
  const double md = static_cast<double>(m);
  const double lead = (md - 1.0) / (2.0 * md) * std::pow(f_choi, 4.0 * u * static_cast<double>(ports));
  return BoundReport::make(lead - u * delta_avg / 2.0, BoundReport::Kind::lower, "cpf_fidelity_lb",
                           {{"m", m}, {"u", u}, {"M", static_cast<double>(ports)}, {"delta", delta_avg}});
}

BoundReport cpf_nonadaptive_fidelity_lb(double f_choi, int m, int u) {
  require_fidelity(f_choi);
  if (m < 2 || u < 1) throw DomainError("cpf_nonadaptive_fidelity_lb: bad m or u");
  const double md = static_cast<double>(m);
  return BoundReport::make((md - 1.0) / (2.0 * md) * std::pow(f_choi, 4.0 * u),
                           BoundReport::Kind::lower, "cpf_nonadaptive_fidelity_lb",
                           {{"m", m}, {"u", u}});
}

MOptimizationResult optimize_over_M(const std::function<double(long)>& bound, MRange range) {
  if (range.min < 1 || range.max < range.min) {
    throw DomainError("optimize_over_M: empty or non-positive M range");
  }
  constexpr int kGridPoints = 200;
  std::vector<long> grid;
  const double ratio = static_cast<double>(range.max) / static_cast<double>(range.min);
  for (int i = 0; i < kGridPoints; ++i) {
    const double t = static_cast<double>(i) / (kGridPoints - 1);
    const long mm = std::clamp(std::lround(static_cast<double>(range.min) * std::pow(ratio, t)),
                               range.min, range.max);
    if (grid.empty() || mm != grid.back()) grid.push_back(mm);
  }
  if (grid.back() != range.max) grid.push_back(range.max);

  MOptimizationResult out;
  auto consider = [&](long mm, double v) {
    if (!std::isfinite(v)) throw DomainError("optimize_over_M: bound is not finite at M=" + std::to_string(mm));
    if (out.grid.empty() || v > out.best_value || (v == out.best_value && mm < out.best_m)) {
      out.best_value = v;
      out.best_m = mm;
    }
    out.grid.emplace_back(mm, v);
  };
  for (long mm : grid) consider(mm, bound(mm));

  const auto it = std::find(grid.begin(), grid.end(), out.best_m);
  const long lo = it == grid.begin() ? grid.front() : *(it - 1);
  const long hi = it + 1 == grid.end() ? grid.back() : *(it + 1);
  for (long mm = lo + 1; mm < hi; ++mm) {
    if (std::binary_search(grid.begin(), grid.end(), mm)) continue;
    consider(mm, bound(mm));
  }
  std::sort(out.grid.begin(), out.grid.end());
  return out;
}

BoundReport cpf_pgm_upper(const CpfSpec& spec, Index max_rank) {
  validate(spec);
  const int m = spec.m;
  const int slots = m * spec.u;
  const ComplexMatrix fb = psd_factor(choi(spec.background));
  const ComplexMatrix ft = psd_factor(choi(spec.target));
  auto factor = [&](int s) -> const ComplexMatrix& { return s % m == 0 ? ft : fb; };

  // Column radices of F_0 (target in cell 0 of every copy).
  std::vector<Index> radix(static_cast<std::size_t>(slots));
  double rank_d = 1.0;
  for (int s = 0; s < slots; ++s) {
    radix[static_cast<std::size_t>(s)] = factor(s).cols();
    rank_d *= static_cast<double>(factor(s).cols());
  }
  if (rank_d > static_cast<double>(max_rank)) {
    throw GuardError("cpf_pgm_upper: single-state rank " + std::to_string(rank_d) +
                     " exceeds the guard " + std::to_string(max_rank) + "; reduce u or m");
  }
  const Index rank = static_cast<Index>(rank_d);
  auto source = [&](int t, int j) {  // slot of F_0 that S^j moves onto slot t
    const int c = t / m, k = t % m;
    return c * m + ((k - j) % m + m) % m;
  };

  // A_j = F_0^dagger S^j F_0, for j = 0..m-1.
  std::vector<ComplexMatrix> shifted(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    ComplexMatrix kron = factor(0).adjoint() * factor(source(0, j));
    for (int t = 1; t < slots; ++t) {
      kron = tensor(kron, factor(t).adjoint() * factor(source(t, j)));
    }
    // Columns of `kron` are ordered by source slot sigma(t); reorder to ascending slots.
    std::vector<Index> kstride(static_cast<std::size_t>(slots));
    Index acc = 1;
    for (int t = slots - 1; t >= 0; --t) {
      kstride[static_cast<std::size_t>(source(t, j))] = acc;
      acc *= radix[static_cast<std::size_t>(source(t, j))];
    }
    ComplexMatrix a(rank, rank);
    for (Index col = 0; col < rank; ++col) {
      Index rem = col, kcol = 0;
      for (int s = slots - 1; s >= 0; --s) {
        const Index r = radix[static_cast<std::size_t>(s)];
        kcol += (rem % r) * kstride[static_cast<std::size_t>(s)];
        rem /= r;
      }
      a.col(col) = kron.col(kcol);
    }
    shifted[static_cast<std::size_t>(j)] = std::move(a);
  }

  // The Gram of the weighted factors F_n / sqrt(m) is block circulant with blocks
  // A_{p-n}/m; every diagonal block of its square root equals (1/m) sum_k sqrt(Ahat_k/m).
  const double md = static_cast<double>(m);
  ComplexMatrix diag_block = ComplexMatrix::Zero(rank, rank);
  for (int k = 0; k < m; ++k) {
    ComplexMatrix hat = ComplexMatrix::Zero(rank, rank);
    for (int j = 0; j < m; ++j) {
      hat += std::polar(1.0, 2.0 * std::numbers::pi * j * k / md) * shifted[static_cast<std::size_t>(j)];
    }
    diag_block += support_sqrt((hat + hat.adjoint()) * (0.5 / md), kGramCutoff);
  }
  diag_block /= md;
  const double success = md * diag_block.squaredNorm();
  return BoundReport::make(std::clamp(1.0 - success, 0.0, 1.0), BoundReport::Kind::upper,
                           "cpf_pgm", {{"m", m}, {"u", spec.u}});
}

BoundReport cpf_pgm_upper_gram(const CpfSpec& spec, Index max_rank) {
  validate(spec);
  const std::vector<DensityMatrix> locals{choi(spec.background), choi(spec.target)};
  const std::vector<double> weights(static_cast<std::size_t>(spec.m), 1.0 / spec.m);
  const ProductGram pg = product_gram(locals, copy_labels(spec.m, spec.u), weights, max_rank);
  const double err = pgm_error_gram(pg.gram, pg.offsets);
  return BoundReport::make(std::clamp(err, 0.0, 1.0), BoundReport::Kind::upper, "cpf_pgm_gram",
                           {{"m", spec.m}, {"u", spec.u}});
}

}  // namespace qcd
