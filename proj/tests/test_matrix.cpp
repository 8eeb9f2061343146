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

#include <cmath>
#include <vector>

#include "doctest.h"

#include "qcd/channels.hpp"
#include "qcd/error.hpp"
#include "qcd/matrix.hpp"
#include "qcd/random.hpp"
#include "test_util.hpp"

using namespace qcd;
using qcd::testing::basis;
using qcd::testing::diag;
using qcd::testing::max_abs;

TEST_SUITE("matrix") {

TEST_CASE("tensor of identities is the identity") {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  CHECK(max_abs(tensor(i2, i2) - ComplexMatrix::Identity(4, 4)) == 0.0);
}

TEST_CASE("tensor of diagonals is a-major") {
  CHECK(max_abs(tensor(diag({1, 0}), diag({0.5, 0.5})) - diag({0.5, 0.5, 0, 0})) == 0.0);
}

TEST_CASE("tensor entry layout and trace") {
  Rng rng(11);
  const ComplexMatrix a = gaussian_matrix(2, 2, rng);
  const ComplexMatrix b = gaussian_matrix(3, 3, rng);
  const ComplexMatrix t = tensor(a, b);
  for (Index i1 = 0; i1 < 2; ++i1)
    for (Index j1 = 0; j1 < 2; ++j1)
      for (Index i2 = 0; i2 < 3; ++i2)
        for (Index j2 = 0; j2 < 3; ++j2) CHECK(std::abs(t(i1 * 3 + i2, j1 * 3 + j2) - a(i1, j1) * b(i2, j2)) == 0.0);
  CHECK(std::abs(t.trace() - a.trace() * b.trace()) < 1e-12);
}

TEST_CASE("tensor guard rejects oversized products") {
  const ComplexMatrix a = ComplexMatrix::Identity(8, 8);
  CHECK_THROWS_AS(tensor(a, a, 32), GuardError);
  CHECK_NOTHROW(tensor(a, a, 64));
}

TEST_CASE("trace norm examples") {
  Rng rng(5);
  CHECK(trace_norm(random_density(5, 3, rng).matrix()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(trace_norm(diag({0.5, -0.5})) == doctest::Approx(1.0).epsilon(1e-15));
  const ComplexMatrix diff = choi(make_qec(2, 0.0)).matrix() - choi(make_qec(2, 1.0)).matrix();
  // Oracle: eigenvalues of the difference taken directly.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(diff);
  CHECK(es.eigenvalues().cwiseAbs().sum() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(trace_norm(diff) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(trace_norm(ComplexMatrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("trace norm is unitarily invariant") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 2 + trial % 5;
    const ComplexMatrix a = gaussian_matrix(n, n, rng);
    const ComplexMatrix h = (a + a.adjoint()) / 2.0;
    const ComplexMatrix u = haar_unitary(n, rng);
    const ComplexMatrix v = haar_unitary(n, rng);
    CHECK(std::abs(trace_norm(u * a * v) - trace_norm(a)) < 1e-9);
    CHECK(std::abs(trace_norm(u * h * v) - trace_norm(h)) < 1e-9);
  }
}

TEST_CASE("trace norm of block-sparse Hermitian input matches the dense solver") {
  Rng rng(8);
  const ComplexMatrix a = choi(make_qec(2, 0.3)).matrix() - choi(make_qec(2, 0.8)).matrix();
  const ComplexMatrix b = choi(make_qdc(2, 0.1)).matrix();
  const ComplexMatrix t = tensor(tensor(a, b), a);
  const double dense = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(t).eigenvalues().cwiseAbs().sum();
  CHECK(std::abs(trace_norm(t) - dense) < 1e-12);
}

TEST_CASE("fidelity examples") {
  Rng rng(3);
  const DensityMatrix rho = random_density(4, 2, rng);
  CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fidelity(DensityMatrix::pure(basis(3, 0)), DensityMatrix::pure(basis(3, 2))) == doctest::Approx(0.0));
  const double closed = (1.0 + std::sqrt(0.8 * 0.7) + std::sqrt(0.2 * 0.3)) / 2.0;
  CHECK(closed == doctest::Approx(0.996640).epsilon(1e-6));
  CHECK(std::abs(fidelity(choi(make_qadc(0.2)), choi(make_qadc(0.3))) - closed) < 1e-9);
  CHECK_THROWS_AS(fidelity(DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(3)), DimensionError);
}

TEST_CASE("fidelity symmetry and multiplicativity") {
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix r1 = random_density(3, 1 + trial % 3, rng);
    const DensityMatrix s1 = random_density(3, 2, rng);
    const DensityMatrix r2 = random_density(2, 2, rng);
    const DensityMatrix s2 = random_density(2, 1, rng);
    CHECK(std::abs(fidelity(r1, s1) - fidelity(s1, r1)) < 1e-9);
    CHECK(std::abs(fidelity(tensor(r1, r2), tensor(s1, s2)) - fidelity(r1, s1) * fidelity(r2, s2)) < 1e-9);
  }
}

TEST_CASE("trace distance lies inside the fidelity sandwich") {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix r = random_density(4, 1 + trial % 4, rng);
    const DensityMatrix s = random_density(4, 1 + (trial / 4) % 4, rng);
    const double t = trace_norm(r.matrix() - s.matrix()) / 2.0;
    const double f = fidelity(r, s);
    CHECK(t >= 1.0 - f - 1e-9);
    CHECK(t <= std::sqrt(1.0 - f * f) + 1e-9);
  }
}

TEST_CASE("density matrix validation") {
  CHECK_THROWS_AS(DensityMatrix(diag({0.5, 0.6})), DomainError);
  CHECK_THROWS_AS(DensityMatrix(diag({1.5, -0.5})), DomainError);
  ComplexMatrix skew = diag({0.5, 0.5});
  skew(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{skew}, DomainError);
  ComplexMatrix nan = diag({0.5, 0.5});
  nan(0, 0) = std::nan("");
  CHECK_THROWS_AS(DensityMatrix{nan}, DomainError);
  CHECK_NOTHROW(DensityMatrix(diag({1.0 + 1e-12, -1e-12})));
}

TEST_CASE("hermitize rejects large asymmetry") {
  ComplexMatrix a = diag({1, 1});
  a(0, 1) = 1e-9;
  CHECK(max_abs(hermitize(a) - hermitize(a).adjoint()) == 0.0);
  a(0, 1) = 1e-6;
  CHECK_THROWS_AS(hermitize(a), DomainError);
}

TEST_CASE("psd square root") {
  Rng rng(12);
  const DensityMatrix rho = random_density(5, 3, rng);
  const ComplexMatrix s = psd_sqrt(rho.matrix());
  CHECK(max_abs(s * s - rho.matrix()) < 1e-10);
  CHECK_NOTHROW(psd_sqrt(diag({1, -5e-11})));
  CHECK_THROWS_AS(psd_sqrt(diag({1, -1e-6})), DomainError);
}

TEST_CASE("joint support compression examples") {
  const DensityMatrix a = DensityMatrix::pure(basis(4, 0));
  const DensityMatrix b = DensityMatrix::pure(basis(4, 3));
  const std::vector<DensityMatrix> two{a, b};
  CHECK(joint_support_compress(two).basis.rank == 2);

  Rng rng(2);
  const std::vector<DensityMatrix> one{random_pure(3, rng)};
  const CompressedStates c1 = joint_support_compress(one);
  CHECK(c1.basis.rank == 1);
  CHECK(std::abs(c1.states[0].matrix()(0, 0) - 1.0) < 1e-12);

  const DensityMatrix r0 = tensor_power(choi(make_qadc(0.1)), 3);
  const DensityMatrix r1 = tensor_power(choi(make_qadc(0.2)), 3);
  CHECK(r0.dim() == 64);
  const std::vector<DensityMatrix> pair{r0, r1};
  const CompressedStates c = joint_support_compress(pair);
  CHECK(c.basis.rank <= 16);
  const double full = trace_norm(r0.matrix() - r1.matrix());
  CHECK(std::abs(trace_norm(c.states[0].matrix() - c.states[1].matrix()) - full) < 1e-9);
  CHECK_THROWS_AS(joint_support_compress(std::vector<DensityMatrix>{}), DomainError);
}

TEST_CASE("compression preserves trace norms of real combinations") {
  Rng rng(21);
  std::vector<DensityMatrix> states;
  for (int k = 0; k < 3; ++k) states.push_back(random_density(8, 2, rng));
  const CompressedStates c = joint_support_compress(states);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix full = ComplexMatrix::Zero(8, 8);
    ComplexMatrix small = ComplexMatrix::Zero(c.basis.rank, c.basis.rank);
    for (std::size_t k = 0; k < states.size(); ++k) {
      const double w = coef(rng);
      full += w * states[k].matrix();
      small += w * c.states[k].matrix();
    }
    CHECK(std::abs(trace_norm(full) - trace_norm(small)) < 1e-9);
  }
}

TEST_CASE("compressed product states reproduce fidelities") {
  const std::vector<DensityMatrix> locals{choi(make_qadc(0.3)), choi(make_qadc(0.7))};
  const std::vector<std::vector<int>> labels{{0, 0, 1}, {1, 0, 0}};
  const std::vector<DensityMatrix> small = compress_product_states(locals, labels);
  const std::vector<DensityMatrix> f0{locals[0], locals[0], locals[1]};
  const std::vector<DensityMatrix> f1{locals[1], locals[0], locals[0]};
  const DensityMatrix big0 = tensor_all(f0);
  const DensityMatrix big1 = tensor_all(f1);
  CHECK(std::abs(fidelity(small[0], small[1]) - fidelity(big0, big1)) < 1e-9);
  CHECK(std::abs(trace_norm(small[0].matrix() - small[1].matrix()) - trace_norm(big0.matrix() - big1.matrix())) <
        1e-9);
}

}  // TEST_SUITE
