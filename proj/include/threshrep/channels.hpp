/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <optional>

#include "threshrep/core.hpp"

namespace threshrep {

// Per-invariant residual report. pass() iff every item is within tolerance.
struct ValidationReport {
  struct Item {
    std::string name;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = true;
  };
  std::vector<Item> items;

  void add(const std::string& name, double residual, double tol);
  bool pass() const;
  std::string summary() const;
};

// A state: Hermitian, PSD, unit trace, on named spaces.
struct DensityOperator {
  LabeledOp op;

  DensityOperator() = default;
  DensityOperator(CMat m, SpaceDims spaces) : op(std::move(m), std::move(spaces)) {}
  explicit DensityOperator(LabeledOp o) : op(std::move(o)) {}
};

// A channel as its Choi matrix J(Phi) = sum_ij E_ij (x) Phi(E_ij),
// input factors first. Input and output space names must be disjoint.
struct ChoiOperator {
  CMat matrix;
  SpaceDims in_spaces;
  SpaceDims out_spaces;

  ChoiOperator() = default;
  ChoiOperator(CMat m, SpaceDims in, SpaceDims out);

  SpaceDims joint_spaces() const { return in_spaces.concat(out_spaces); }
  LabeledOp as_labeled() const { return LabeledOp(matrix, joint_spaces()); }
};

// Binary measurement {P0, P1} on named spaces; P0 + P1 = I.
struct BinaryPOVM {
  CMat p0;
  CMat p1;
  SpaceDims spaces;

  BinaryPOVM() = default;
  BinaryPOVM(CMat zero, CMat one, SpaceDims sp);
};

ValidationReport validate(const DensityOperator& rho);
ValidationReport validate(const ChoiOperator& choi);
ValidationReport validate(const BinaryPOVM& povm);

// Apply a channel to a state. The state's spaces must include all channel
// input spaces; untouched factors are carried through, followed by the
// channel's output factors.
DensityOperator apply_channel(const ChoiOperator& c, const DensityOperator& rho);

// Choi operator of b after a, contracting a's outputs that feed b's inputs.
// Spaces not contracted are carried through. Contracting nothing is an
// error unless allow_disjoint is set, in which case the result is the
// Choi of the tensor-product map.
ChoiOperator link_product(const ChoiOperator& a, const ChoiOperator& b,
                          bool allow_disjoint = false);

// Choi of the identity channel from `in` to `out` (equal dims required).
ChoiOperator identity_choi(const SpaceDims& in, const SpaceDims& out);

// Choi from a Stinespring-style map: columns of kraus[k] give Phi(rho) =
// sum_k K_k rho K_k^dagger.
ChoiOperator choi_from_kraus(const std::vector<CMat>& kraus, const SpaceDims& in,
                             const SpaceDims& out);

// Eigendecompose a Choi matrix into Kraus operators (used as an oracle).
std::vector<CMat> kraus_from_choi(const ChoiOperator& c);

}  // namespace threshrep
