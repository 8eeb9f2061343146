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

// Seeded generators for random states and unitaries (crosscheck and tests).

#pragma once

#include <random>

#include "qcd/matrix.hpp"

namespace qcd {

using Rng = std::mt19937_64;

ComplexMatrix gaussian_matrix(Index rows, Index cols, Rng& rng);

/// Haar-random unitary from the QR decomposition of a complex Gaussian matrix.
ComplexMatrix haar_unitary(Index dim, Rng& rng);

/// Random state W W^dagger / tr with W a dim x rank Gaussian matrix.
DensityMatrix random_density(Index dim, Index rank, Rng& rng);

DensityMatrix random_pure(Index dim, Rng& rng);

/// Priors drawn uniformly from the simplex.
std::vector<double> random_priors(std::size_t n, Rng& rng);

}  // namespace qcd
