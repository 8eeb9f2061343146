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

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "qcd/channels.hpp"
#include "qcd/error.hpp"
#include "qcd/qadc.hpp"
#include "qcd/random.hpp"
#include "test_util.hpp"

using namespace qcd;
using qcd::testing::diag;
using qcd::testing::max_abs;

namespace {

constexpr NullingVariant kVariants[] = {NullingVariant::apply_q0, NullingVariant::apply_q1,
                                        NullingVariant::apply_min, NullingVariant::apply_max};

ComplexMatrix conjugated(double q_applied, double q_actual) {
  const ComplexMatrix u = nulling_unitary(q_applied);
  return u * choi(make_qadc(q_actual)).matrix() * u.adjoint();
}

double q_for(NullingVariant v, double q0, double q1) {
  switch (v) {
    case NullingVariant::apply_q0: return q0;
    case NullingVariant::apply_q1: return q1;
    case NullingVariant::apply_min: return std::min(q0, q1);
    case NullingVariant::apply_max: return std::max(q0, q1);
  }
  return q0;
}

// Receiver simulated shot by shot: outcomes drawn from the conjugated Choi diagonal,
// maximum-likelihood decision with ties to hypothesis 0.
double simulate_nulling(double q0, double q1, int u, double q_applied, long shots, Rng& rng) {
  std::array<std::array<double, 4>, 2> p{};
  for (int h = 0; h < 2; ++h) {
    const ComplexMatrix c = conjugated(q_applied, h == 0 ? q0 : q1);
    for (int k = 0; k < 4; ++k) p[h][k] = std::max(0.0, c(k, k).real());
  }
  std::discrete_distribution<int> draw0(p[0].begin(), p[0].end());
  std::discrete_distribution<int> draw1(p[1].begin(), p[1].end());
  std::bernoulli_distribution coin(0.5);
  long errors = 0;
  for (long s = 0; s < shots; ++s) {
    const int truth = coin(rng) ? 1 : 0;
    double l0 = 1.0, l1 = 1.0;
    for (int r = 0; r < u; ++r) {
      const int k = truth == 0 ? draw0(rng) : draw1(rng);
      l0 *= p[0][k];
      l1 *= p[1][k];
    }
    const int guess = l1 > l0 ? 1 : 0;
    if (guess != truth) ++errors;
  }
  return static_cast<double>(errors) / static_cast<double>(shots);
}

}  // namespace

TEST_SUITE("qadc") {

TEST_CASE("Choi fidelity closed form") {
  CHECK(qadc_choi_fidelity(0.4, 0.4) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(qadc_choi_fidelity(0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(qadc_choi_fidelity(0.2, 0.3) == doctest::Approx(0.996640).epsilon(1e-6));
  for (double a : {0.0, 0.2, 0.55, 1.0})
    for (double b : {0.1, 0.3, 0.9})
      CHECK(std::abs(qadc_choi_fidelity(a, b) - fidelity(choi(make_qadc(a)), choi(make_qadc(b)))) < 1e-10);
  CHECK_THROWS_AS(qadc_choi_fidelity(-0.1, 0.3), DomainError);
}

TEST_CASE("fidelity sandwich") {
  const FvgBounds one = fvg_sandwich(1.0, 5);
  CHECK(one.lower == 0.5);
  CHECK(one.upper == 0.5);
  const FvgBounds zero = fvg_sandwich(0.0, 5);
  CHECK(zero.lower == 0.0);
  CHECK(zero.upper == 0.0);
  CHECK_THROWS_AS(fvg_sandwich(1.2, 1), DomainError);

  // Pair with Choi fidelity 0.99, found by bisection on q1.
  double lo = 0.3, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = (lo + hi) / 2;
    (qadc_choi_fidelity(0.3, mid) > 0.99 ? lo : hi) = mid;
  }
  const double q1 = (lo + hi) / 2;
  CHECK(qadc_choi_fidelity(0.3, q1) == doctest::Approx(0.99).epsilon(1e-12));
  const FvgBounds b = fvg_sandwich(0.99, 8);
  const double h = qadc_binary_helstrom(0.3, q1, 8).value;
  CHECK(b.lower <= h + 1e-9);
  CHECK(h <= b.upper + 1e-9);
}

TEST_CASE("compressed Helstrom matches explicit tensor powers") {
  for (int u = 1; u <= 3; ++u) {
    const double q0 = 0.25, q1 = 0.45;
    const DensityMatrix a = tensor_power(choi(make_qadc(q0)), u);
    const DensityMatrix b = tensor_power(choi(make_qadc(q1)), u);
    CHECK(std::abs(qadc_binary_helstrom(q0, q1, u).value - helstrom_binary(a, b).value) < 1e-10);
    CHECK(std::abs(qadc_binary_pgm(q0, q1, u).value - pgm_error(StateEnsemble::equiprobable({a, b})).value) < 1e-10);
  }
}

TEST_CASE("adaptive lower bound") {
  const XiFunction none = [](long) { return 0.0; };
  CHECK(qadc_adaptive_lb(0.3, 0.3, 4, 1000000, none).value == doctest::Approx(0.5).epsilon(1e-15));
  const BoundReport big = qadc_adaptive_lb(0.3, 0.3, 4, 1000000);
  CHECK(big.value < 0.5);
  CHECK(big.value > 0.5 - 1e-4);
  const BoundReport neg = qadc_adaptive_lb(0.0, 0.0, 1, 1);
  CHECK(neg.value <= 0.0);
  CHECK(neg.clamped_value == 0.0);
  CHECK(neg.kind == BoundReport::Kind::lower);
  // Value at M built by hand from the simulation errors.
  const double f = qadc_choi_fidelity(0.2, 0.24);
  const double d = qadc_pbt_error(0.2, 50).value + qadc_pbt_error(0.24, 50).value;
  CHECK(std::abs(qadc_adaptive_lb(0.2, 0.24, 3, 50).value - (1 - 3 * d - std::sqrt(1 - std::pow(f, 300))) / 2) < 1e-15);
}

TEST_CASE("optimized adaptive bound stays below the non-adaptive Helstrom error") {
  for (int k = 0; k <= 12; ++k) {
    const double q1 = k * 0.08;
    const double q0 = q1 + 0.04;
    if (q0 > 1.0) break;
    const MOptimizationResult r = qadc_adaptive_lb_optimized(q0, q1, 8);
    CHECK(r.best_value <= qadc_binary_helstrom(q0, q1, 8).value + 1e-7);
  }
}

TEST_CASE("nulling unitary") {
  for (int k = 0; k <= 10; ++k) {
    const double q = k / 10.0;
    const ComplexMatrix u = nulling_unitary(q);
    CHECK(max_abs(u * u.adjoint() - ComplexMatrix::Identity(4, 4)) < 1e-12);
    const ComplexMatrix c = conjugated(q, q);
    CHECK(max_abs(c - diag({0, 0, 1 - q / 2, q / 2})) < 1e-10);
  }
  CHECK(max_abs(conjugated(0.0, 0.0) - diag({0, 0, 1, 0})) < 1e-12);
  CHECK(max_abs(conjugated(0.5, 0.5) - diag({0, 0, 0.75, 0.25})) < 1e-12);
  CHECK_THROWS_AS(nulling_unitary(1.5), DomainError);
}

TEST_CASE("nulling outcome distribution") {
  const OutcomeDistribution same = nulling_outcome_dist(0.35, 0.35);
  CHECK(std::abs(same[0]) < 1e-15);
  CHECK(std::abs(same[1]) < 1e-15);
  CHECK(std::abs(same[2] - (1 - 0.175)) < 1e-15);
  CHECK(std::abs(same[3] - 0.175) < 1e-15);
  const OutcomeDistribution zero = nulling_outcome_dist(0.0, 0.0);
  CHECK(zero[2] == doctest::Approx(1.0));
  const OutcomeDistribution d = nulling_outcome_dist(0.2, 0.3);
  CHECK(std::abs(d[0] - (2 - 0.5 - 2 * std::sqrt(0.56)) / 3.6) < 1e-15);
  double total = 0;
  for (double p : d.probs()) {
    CHECK(p >= 0.0);
    total += p;
  }
  CHECK(std::abs(total - 1.0) < 1e-12);
  for (double qa : {0.0, 0.2, 0.7, 1.0})
    for (double qt : {0.0, 0.3, 0.9, 1.0}) {
      const OutcomeDistribution o = nulling_outcome_dist(qa, qt);
      const ComplexMatrix c = conjugated(qa, qt);
      for (int k = 0; k < 4; ++k) CHECK(std::abs(o[static_cast<std::size_t>(k)] - c(k, k).real()) < 1e-10);
    }
}

TEST_CASE("outcome distribution validation") {
  CHECK_THROWS_AS(OutcomeDistribution({0.5, 0.5, 0.1, -0.1}), DomainError);
  CHECK_THROWS_AS(OutcomeDistribution({0.5, 0.5, 0.1, 0.0}), DomainError);
  const OutcomeDistribution tiny({0.5, 0.5, 1e-13, -1e-13});
  CHECK(tiny[3] == 0.0);
}

TEST_CASE("nulling receiver error") {
  for (NullingVariant v : kVariants) {
    CHECK(std::abs(nulling_error(0.3, 0.3, 5, v) - 0.5) < 1e-12);
  }
  for (double q1 : {0.1, 0.4, 0.9})
    for (int u : {1, 3, 8}) {
      const double p2 = nulling_outcome_dist(0.0, q1)[2];
      CHECK(std::abs(nulling_error(0.0, q1, u, NullingVariant::apply_q0) - 0.5 * std::pow(p2, u)) < 1e-14);
      CHECK(nulling_error(0.0, q1, u, NullingVariant::apply_q0) >= qadc_binary_helstrom(0.0, q1, u).value - 1e-12);
    }
  CHECK(std::string(to_string(NullingVariant::apply_min)) == "apply_min");
}

TEST_CASE("nulling receiver against Monte Carlo") {
  Rng rng(20260415);
  const long shots = 10000000;
  struct Case {
    double q0, q1;
    int u;
    NullingVariant v;
  };
  const Case cases[] = {{0.0, 0.4, 3, NullingVariant::apply_q0}, {0.3, 0.5, 2, NullingVariant::apply_min}};
  for (const auto& c : cases) {
    const double exact = nulling_error(c.q0, c.q1, c.u, c.v);
    const double est = simulate_nulling(c.q0, c.q1, c.u, q_for(c.v, c.q0, c.q1), shots, rng);
    const double sigma = std::sqrt(exact * (1 - exact) / static_cast<double>(shots));
    CHECK(std::abs(est - exact) <= 3 * sigma);
  }
}

TEST_CASE("nulling error is symmetric under relabeling") {
  for (double a : {0.1, 0.5})
    for (double b : {0.3, 0.8})
      for (int u : {1, 4}) {
        CHECK(std::abs(nulling_error(a, b, u, NullingVariant::apply_q0) - nulling_error(b, a, u, NullingVariant::apply_q1)) < 1e-13);
        CHECK(std::abs(nulling_error(a, b, u, NullingVariant::apply_min) - nulling_error(b, a, u, NullingVariant::apply_min)) < 1e-13);
        CHECK(std::abs(nulling_error(a, b, u, NullingVariant::apply_max) - nulling_error(b, a, u, NullingVariant::apply_max)) < 1e-13);
      }
}

TEST_CASE("receiver ordering at eight rounds") {
  for (int k = 0; k <= 8; ++k) {
    const double q1 = k * 0.12;
    const double q0 = q1 + 0.04;
    if (q0 > 1.0) break;
    const double h = qadc_binary_helstrom(q0, q1, 8).value;
    const FvgBounds b = fvg_sandwich(qadc_choi_fidelity(q0, q1), 8);
    CHECK(b.lower <= h + 1e-7);
    CHECK(h <= b.upper + 1e-7);
    CHECK(h <= qadc_binary_pgm(q0, q1, 8).value + 1e-7);
    for (NullingVariant v : kVariants) CHECK(h <= nulling_error(q0, q1, 8, v) + 1e-7);
    CHECK(nulling_error(q0, q1, 8, NullingVariant::apply_min) <= nulling_error(q0, q1, 8, NullingVariant::apply_max) + 1e-15);
  }
}

// Reference values from 40-digit arithmetic on the same outcome distributions.
TEST_CASE("nulling with the smaller probability wins on average, not pointwise") {
  const double means[8][2] = {{0.489364138888, 0.49},           {0.483930616707, 0.484428117112},
                              {0.479704394247, 0.480357602469}, {0.475906602344, 0.476504880648},
                              {0.472582427062, 0.473347861791}, {0.46959244088, 0.470184615402},
                              {0.466674671129, 0.467455252462}, {0.464062605591, 0.464718661994}};
  for (int u = 1; u <= 8; ++u) {
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < 25; ++i) {
      const double q1 = 0.04 * i, q0 = q1 + 0.04;
      lo += nulling_error(q0, q1, u, NullingVariant::apply_min) / 25;
      hi += nulling_error(q0, q1, u, NullingVariant::apply_max) / 25;
    }
    CHECK(std::abs(lo - means[u - 1][0]) < 1e-11);
    CHECK(std::abs(hi - means[u - 1][1]) < 1e-11);
    CHECK(lo < hi);
  }
  CHECK(std::abs(nulling_error(0.24, 0.2, 8, NullingVariant::apply_min) - 0.46435088746032178) < 1e-13);
  CHECK(std::abs(nulling_error(0.24, 0.2, 8, NullingVariant::apply_max) - 0.46427972387181762) < 1e-13);
}

}  // TEST_SUITE
