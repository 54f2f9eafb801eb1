/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <utility>

#include "threshrep/channels.hpp"

namespace threshrep {

// Canonical space names used throughout: X1..Xr (verifier to prover),
// Y1..Yr (prover to verifier), Z1..Zr (verifier memory), W1..W(r-1)
// (prover memory).
std::string x_name(int round);
std::string y_name(int round);
std::string z_name(int round);
std::string w_name(int round);

// An r-round verifier: initial state rho on X1 (x) Z1, response channels
// psi[i]: Y(i+1) (x) Z(i+1) -> X(i+2) (x) Z(i+2), and a final binary
// measurement on Yr (x) Zr.
struct ProtocolSpec {
  int r = 1;
  std::vector<int> x_dims, y_dims, z_dims;
  DensityOperator rho;
  std::vector<ChoiOperator> psi;
  BinaryPOVM povm;
};

// Builds a ProtocolSpec with canonical space labels from raw matrices.
ProtocolSpec make_protocol(int r, std::vector<int> x_dims, std::vector<int> y_dims,
                           std::vector<int> z_dims, CMat rho, std::vector<CMat> psi,
                           CMat p0, CMat p1);

ValidationReport validate(const ProtocolSpec& p);

// An explicit prover: phi[0]: X1 -> Y1 (x) W1, phi[i]: X(i+1) (x) W(i) ->
// Y(i+1) (x) W(i+1), last round has no memory output.
struct ProverProgram {
  std::vector<int> w_dims;  // r-1 entries
  std::vector<ChoiOperator> phi;
};

ValidationReport validate(const ProverProgram& b, const ProtocolSpec& p);

// The verifier compiled into a single operator Q1 on Y1 (x) X1 (x) ... (x)
// Yr (x) Xr with <Q1, X> = Pr[win] for every strategy operator X.
struct WinningOperator {
  CMat q1;
  SpaceDims spaces;
};

// n parallel instances, accept iff at least k win.
struct ThresholdTask {
  ProtocolSpec base;
  int n = 1;
  int k = 1;
};

// Pr[outcome 1] from direct simulation of the interaction.
double simulate(const ProtocolSpec& p, const ProverProgram& b);

WinningOperator compile_winning_operator(const ProtocolSpec& p);

// Compiles the n-fold protocol with instance-major tensor ordering and the
// accepting element P1^(n,k) = sum over outcome strings with >= k wins.
std::pair<ProtocolSpec, WinningOperator> compile_threshold(const ThresholdTask& t);

// The |s|-instance win-all sub-task (the prover self-simulates the verifier
// on the instances outside s).
ThresholdTask restrict_to_subset(const ThresholdTask& t, const std::set<int>& s);

// 1-round demo with optimal value cos^2(pi/8) whose (n=2, k=1) repetition
// is winnable with certainty.
ProtocolSpec builtin_hedging_protocol();
// 1-round demo: the verifier hides a classical coin; optimal value 1/2.
ProtocolSpec builtin_coin_protocol();
// 1-round demo accepting unconditionally.
ProtocolSpec builtin_always_accept_protocol();

}  // namespace threshrep
