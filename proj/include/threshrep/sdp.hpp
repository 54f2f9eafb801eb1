/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cstdint>

#include "threshrep/strategy.hpp"

namespace threshrep {

struct SolverOptions {
  double gap_tol = 1e-5;
  double feas_tol = 1e-7;
  int max_iter = 100;
  uint64_t seed = 1;  // used by the see-saw oracle
  int restarts = 10;  // used by the see-saw oracle
};

enum class SdpStatus { optimal, max_iter, infeasible };

std::string to_string(SdpStatus s);

// Maximize <objective, X> over Hermitian PSD block variables subject to
// linear equality constraints. Constraint matrices are Hermitian and stored
// sparsely across blocks.
struct SdpProblem {
  std::vector<long> block_dims;  // complex dimensions
  std::vector<CMat> objective;   // one Hermitian matrix per block

  struct Entry {
    int block = 0;
    long row = 0, col = 0;
    complexd value;
  };
  struct Constraint {
    std::vector<Entry> entries;
    double rhs = 0.0;
  };
  std::vector<Constraint> constraints;

  long dimension() const;  // sum of block dims

  static SdpProblem single_block(CMat objective);
  // Appends the dense Hermitian matrix a (acting on `block`) as the
  // constraint <a, X_block> = rhs.
  void add_constraint(const CMat& a, double rhs, int block = 0);
  // Appends a constraint spanning several blocks.
  void add_constraint(const std::vector<std::pair<int, CMat>>& terms, double rhs);
};

struct SdpSolution {
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;  // dual - primal
  std::vector<CMat> x;
  std::vector<double> y;  // dual multipliers, one per constraint
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  SdpStatus status = SdpStatus::max_iter;
};

// Primal-dual interior-point solve. Complex data is handled through the
// real-symmetric embedding X -> [[Re X, -Im X], [Im X, Re X]], which
// preserves the optimum; real-valued problems skip the embedding.
// Deterministic given identical inputs and options.
SdpSolution solve_sdp(const SdpProblem& prob, const SolverOptions& opts = {});

// The optimal-value program: maximize <q1, X^(r)> over strategy operators,
// with the intermediate marginals kept as explicit PSD blocks coupled by
// the causality recursion.
SdpProblem build_value_sdp(const WinningOperator& q);

SdpSolution solve_value_sdp(const WinningOperator& q, const SolverOptions& opts = {});

// Compile, build, solve; value clamped to [0,1] when within 1e-4.
double optimal_value(const ProtocolSpec& p, const SolverOptions& opts = {});
double optimal_threshold_value(const ThresholdTask& t, const SolverOptions& opts = {});

}  // namespace threshrep
