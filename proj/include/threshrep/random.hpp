/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cstdint>
#include <random>

#include "threshrep/channels.hpp"

namespace threshrep {

// Deterministic random source. Distribution transforms are implemented by
// hand so identical seeds give identical streams on every platform.
class Rng {
public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 bits.
  double uniform();
  // Standard normal via Box-Muller.
  double normal();
  complexd complex_normal();

private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Ginibre-distributed complex matrix.
CMat random_gaussian(Rng& rng, long rows, long cols);

// Haar-random isometry: cols orthonormal columns in C^rows (rows >= cols).
CMat random_isometry(Rng& rng, long rows, long cols);

CMat random_unitary(Rng& rng, long dim);

// Random full-rank density operator.
DensityOperator random_density(Rng& rng, const SpaceDims& spaces);

// Random CPTP channel via a Haar-random Stinespring isometry with
// environment dimension env_dim (default in*out).
ChoiOperator random_cptp_choi(Rng& rng, const SpaceDims& in, const SpaceDims& out,
                              long env_dim = 0);

// Random binary POVM: P1 = U diag(u) U^dagger with u uniform in [0,1].
BinaryPOVM random_povm(Rng& rng, const SpaceDims& spaces);

}  // namespace threshrep
