/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include "threshrep/protocol.hpp"

namespace threshrep {

// An adaptive r-round prover as a single positive operator on
// Y1 (x) X1 (x) ... (x) Yr (x) Xr, with its intermediate marginals.
// Valid iff x >= 0 and the partial-trace recursion holds:
//   Tr_{Yk} X^(k) = X^(k-1) (x) I_{Xk}  (k = r..2),  Tr_{Y1} X^(1) = I_{X1}.
struct StrategyOperator {
  CMat x;                      // X^(r)
  std::vector<CMat> marginals; // X^(1) .. X^(r-1)
  SpaceDims dims;              // Y1, X1, ..., Yr, Xr
};

// Tolerance on the causality recursion (max-norm).
inline constexpr double kStrategyRecursionTol = 1e-7;

StrategyOperator strategy_from_program(const ProverProgram& b, const ProtocolSpec& p);

ValidationReport validate_strategy(const StrategyOperator& s);

// <q1, x>: the win probability of strategy x against compiled verifier q.
double strategy_value(const WinningOperator& q, const StrategyOperator& s);

}  // namespace threshrep
