/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "threshrep/channels.hpp"

#include <algorithm>
#include <sstream>

namespace threshrep {

void ValidationReport::add(const std::string& name, double residual, double tol) {
  items.push_back(Item{name, residual, tol, residual <= tol});
}

bool ValidationReport::pass() const {
  return std::all_of(items.begin(), items.end(),
                     [](const Item& i) { return i.pass; });
}

std::string ValidationReport::summary() const {
  std::ostringstream ss;
  for (const auto& i : items)
    ss << (i.pass ? "pass" : "FAIL") << "  " << i.name << "  residual=" << i.residual
       << "  tol=" << i.tol << "\n";
  return ss.str();
}

ChoiOperator::ChoiOperator(CMat m, SpaceDims in, SpaceDims out)
    : matrix(std::move(m)), in_spaces(std::move(in)), out_spaces(std::move(out)) {
  for (const auto& f : in_spaces.factors)
    if (out_spaces.has(f.name))
      throw DimensionError("Choi input and output share space name '" + f.name + "'");
  long d = in_spaces.total_dim() * out_spaces.total_dim();
  if (matrix.rows() != d || matrix.cols() != d)
    throw DimensionError("Choi matrix dimension does not match declared spaces");
}

BinaryPOVM::BinaryPOVM(CMat zero, CMat one, SpaceDims sp)
    : p0(std::move(zero)), p1(std::move(one)), spaces(std::move(sp)) {
  long d = spaces.total_dim();
  if (p0.rows() != d || p0.cols() != d || p1.rows() != d || p1.cols() != d)
    throw DimensionError("POVM element dimension does not match spaces");
}

namespace {
double herm_residual(const CMat& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}
double finite_residual(const CMat& m) { return all_finite(m) ? 0.0 : 1.0; }
}  // namespace

ValidationReport validate(const DensityOperator& rho) {
  ValidationReport rep;
  const CMat& m = rho.op.m;
  rep.add("finite entries", finite_residual(m), 0.0);
  rep.add("hermitian", herm_residual(m), Tol::herm);
  rep.add("positive semidefinite", std::max(0.0, -min_eigenvalue(m)), Tol::psd);
  rep.add("unit trace", std::abs(m.trace() - complexd(1.0, 0.0)), Tol::herm);
  return rep;
}

ValidationReport validate(const ChoiOperator& choi) {
  ValidationReport rep;
  rep.add("finite entries", finite_residual(choi.matrix), 0.0);
  rep.add("hermitian", herm_residual(choi.matrix), Tol::herm);
  rep.add("completely positive", std::max(0.0, -min_eigenvalue(choi.matrix)), Tol::psd);
  std::vector<std::string> out_names = choi.out_spaces.names();
  std::set<std::string> outs(out_names.begin(), out_names.end());
  CMat reduced = partial_trace(choi.as_labeled(), outs).m;
  double tp = (reduced - identity(reduced.rows())).cwiseAbs().maxCoeff();
  rep.add("trace preserving", tp, Tol::tp);
  return rep;
}

ValidationReport validate(const BinaryPOVM& povm) {
  ValidationReport rep;
  rep.add("finite entries", std::max(finite_residual(povm.p0), finite_residual(povm.p1)),
          0.0);
  rep.add("p0 hermitian", herm_residual(povm.p0), Tol::herm);
  rep.add("p1 hermitian", herm_residual(povm.p1), Tol::herm);
  rep.add("p0 positive semidefinite", std::max(0.0, -min_eigenvalue(povm.p0)), Tol::psd);
  rep.add("p1 positive semidefinite", std::max(0.0, -min_eigenvalue(povm.p1)), Tol::psd);
  double comp = (povm.p0 + povm.p1 - identity(povm.p0.rows())).cwiseAbs().maxCoeff();
  rep.add("completeness p0+p1=I", comp, Tol::povm);
  return rep;
}

DensityOperator apply_channel(const ChoiOperator& c, const DensityOperator& rho) {
  for (const auto& f : c.in_spaces.factors) {
    if (!rho.op.spaces.has(f.name))
      throw DimensionError("state lacks channel input space '" + f.name + "'");
    if (rho.op.spaces.dim_of(f.name) != f.dim)
      throw DimensionError("dimension mismatch on space '" + f.name + "'");
  }
  for (const auto& f : c.out_spaces.factors)
    if (rho.op.spaces.has(f.name) && !c.in_spaces.has(f.name))
      throw DimensionError("channel output space '" + f.name +
                           "' collides with a state space");
  return DensityOperator(contract(rho.op, c.as_labeled()));
}

ChoiOperator link_product(const ChoiOperator& a, const ChoiOperator& b,
                          bool allow_disjoint) {
  std::vector<std::string> shared;
  for (const auto& f : a.out_spaces.factors)
    if (b.in_spaces.has(f.name)) shared.push_back(f.name);
  if (shared.empty() && !allow_disjoint)
    throw DimensionError("link_product: no shared spaces (pass allow_disjoint "
                         "for a tensor-product composition)");
  // Any other overlap between the four space lists is ambiguous.
  for (const auto& f : a.in_spaces.factors)
    if (b.in_spaces.has(f.name) || b.out_spaces.has(f.name))
      throw DimensionError("link_product: space name collision on '" + f.name + "'");
  for (const auto& f : a.out_spaces.factors)
    if (b.out_spaces.has(f.name))
      throw DimensionError("link_product: space name collision on '" + f.name + "'");

  LabeledOp joined = contract(a.as_labeled(), b.as_labeled());

  std::vector<std::string> in_names = a.in_spaces.names();
  for (const auto& f : b.in_spaces.factors) {
    bool contracted = std::find(shared.begin(), shared.end(), f.name) != shared.end();
    if (!contracted) in_names.push_back(f.name);
  }
  std::vector<std::string> out_names;
  for (const auto& f : a.out_spaces.factors) {
    bool contracted = std::find(shared.begin(), shared.end(), f.name) != shared.end();
    if (!contracted) out_names.push_back(f.name);
  }
  for (const auto& f : b.out_spaces.factors) out_names.push_back(f.name);

  std::vector<std::string> order = in_names;
  order.insert(order.end(), out_names.begin(), out_names.end());
  LabeledOp ordered = reorder(joined, order);
  return ChoiOperator(ordered.m, ordered.spaces.subset(in_names),
                      ordered.spaces.subset(out_names));
}

ChoiOperator identity_choi(const SpaceDims& in, const SpaceDims& out) {
  long d = in.total_dim();
  if (out.total_dim() != d)
    throw DimensionError("identity channel needs equal input and output dims");
  CMat j = CMat::Zero(d * d, d * d);
  for (long i = 0; i < d; ++i)
    for (long k = 0; k < d; ++k) j(i * d + i, k * d + k) = 1.0;
  return ChoiOperator(std::move(j), in, out);
}

ChoiOperator choi_from_kraus(const std::vector<CMat>& kraus, const SpaceDims& in,
                             const SpaceDims& out) {
  long din = in.total_dim(), dout = out.total_dim();
  CMat j = CMat::Zero(din * dout, din * dout);
  for (const auto& k : kraus) {
    if (k.rows() != dout || k.cols() != din)
      throw DimensionError("Kraus operator has wrong shape");
    CVec v(din * dout);
    for (long i = 0; i < din; ++i)
      for (long a = 0; a < dout; ++a) v(i * dout + a) = k(a, i);
    j += v * v.adjoint();
  }
  return ChoiOperator(std::move(j), in, out);
}

std::vector<CMat> kraus_from_choi(const ChoiOperator& c) {
  long din = c.in_spaces.total_dim(), dout = c.out_spaces.total_dim();
  Eigen::SelfAdjointEigenSolver<CMat> es(herm(c.matrix));
  std::vector<CMat> kraus;
  for (long e = 0; e < es.eigenvalues().size(); ++e) {
    double lam = es.eigenvalues()(e);
    if (lam <= 1e-12) continue;
    CMat k(dout, din);
    for (long i = 0; i < din; ++i)
      for (long a = 0; a < dout; ++a)
        k(a, i) = std::sqrt(lam) * es.eigenvectors()(i * dout + a, e);
    kraus.push_back(std::move(k));
  }
  return kraus;
}

}  // namespace threshrep
