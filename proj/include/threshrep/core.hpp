/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <complex>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace threshrep {

using complexd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Dimension mismatch, unknown space name, or malformed operand.
class DimensionError : public std::runtime_error {
public:
  explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

// Total dimension would exceed the configured cap (instance too large).
class CapExceededError : public std::runtime_error {
public:
  explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

// An object failed its invariant checks.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file or JSON document.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Hard cap on the total dimension of any constructed operator.
// Overridable via THRESHOLD_REP_MAX_DIM in the CLI.
int max_total_dim();
void set_max_total_dim(int dim);

// Validation tolerances on inputs; internal algebra asserts to 1e-10.
struct Tol {
  static constexpr double herm = 1e-8;
  static constexpr double psd = 1e-8;
  static constexpr double tp = 1e-8;
  static constexpr double povm = 1e-8;
  static constexpr double algebra = 1e-10;
};

// An ordered list of named tensor factors. Total dimension is the product.
struct SpaceDims {
  struct Factor {
    std::string name;
    int dim = 1;
  };
  std::vector<Factor> factors;

  SpaceDims() = default;
  explicit SpaceDims(std::vector<Factor> f);

  static SpaceDims single(const std::string& name, int dim);

  long total_dim() const;
  bool has(const std::string& name) const;
  int dim_of(const std::string& name) const;
  int index_of(const std::string& name) const;
  std::vector<std::string> names() const;

  SpaceDims concat(const SpaceDims& other) const;
  SpaceDims subset(const std::vector<std::string>& keep) const;
  SpaceDims without(const std::set<std::string>& drop) const;

  bool operator==(const SpaceDims& other) const;
};

// A square matrix over an ordered tensor product of named spaces.
// Immutable by convention: operations return new values.
struct LabeledOp {
  CMat m;
  SpaceDims spaces;

  LabeledOp() = default;
  LabeledOp(CMat mat, SpaceDims sp);

  long dim() const { return spaces.total_dim(); }
};

// Kronecker product; a's factors precede b's.
CMat tensor(const CMat& a, const CMat& b);
LabeledOp tensor(const LabeledOp& a, const LabeledOp& b);

// Permute tensor factors into the given order (must name every factor).
LabeledOp reorder(const LabeledOp& op, const std::vector<std::string>& order);

// Trace out the named factors; remaining order preserved.
LabeledOp partial_trace(const LabeledOp& op, const std::set<std::string>& traced);
CMat partial_trace(const CMat& m, const SpaceDims& spaces,
                   const std::set<std::string>& traced);

// Transpose the named factors in place (partial transpose).
LabeledOp partial_transpose(const LabeledOp& op, const std::set<std::string>& names);

// Full transpose with spaces unchanged.
LabeledOp transpose(const LabeledOp& op);

// Contract two operators over all shared space names.
// In the Choi convention J(f) = sum_ij E_ij (x) f(E_ij), wiring ket legs to
// ket legs and bra legs to bra legs over each shared space realizes both
// channel composition and channel application. Result carries a's remaining
// factors followed by b's.
LabeledOp contract(const LabeledOp& a, const LabeledOp& b);

// Hermitian part (m + m^dagger)/2.
CMat herm(const CMat& m);

// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue(const CMat& m);

bool all_finite(const CMat& m);

CMat identity(long dim);

}  // namespace threshrep
