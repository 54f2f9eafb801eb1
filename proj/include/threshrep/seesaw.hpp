/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cstdint>

#include "threshrep/protocol.hpp"

namespace threshrep {

// Alternating-optimization lower bound on the optimal value. The prover is
// parametrized by one Stinespring isometry per round (memory dimension
// d_in * d_out, which is dilation-complete); fixing all rounds but one makes
// the win probability a PSD quadratic form in the free isometry, so the
// polar-factor update is monotone. Best value over `restarts` Haar-random
// initializations, deterministic in `seed`. Always achievable, hence a
// true lower bound on the SDP optimum.
double see_saw_lower_bound(const ProtocolSpec& p, int restarts, uint64_t seed);

double see_saw_lower_bound(const ThresholdTask& t, int restarts, uint64_t seed);

}  // namespace threshrep
