/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "threshrep/strategy.hpp"

namespace threshrep {

namespace {

std::vector<std::string> round_order(int upto) {
  std::vector<std::string> order;
  for (int i = 1; i <= upto; ++i) {
    order.push_back(y_name(i));
    order.push_back(x_name(i));
  }
  return order;
}

}  // namespace

StrategyOperator strategy_from_program(const ProverProgram& b, const ProtocolSpec& p) {
  {
    auto rep = validate(b, p);
    if (!rep.pass()) throw ValidationError("prover program invalid:\n" + rep.summary());
  }
  StrategyOperator s;
  LabeledOp chain = b.phi[0].as_labeled();
  for (int k = 1; k <= p.r; ++k) {
    if (k > 1) chain = contract(chain, b.phi[k - 1].as_labeled());
    LabeledOp marginal = chain;
    if (k < p.r) {
      marginal = partial_trace(chain, {w_name(k)});
      s.marginals.push_back(reorder(marginal, round_order(k)).m);
    } else {
      LabeledOp full = reorder(chain, round_order(p.r));
      s.x = full.m;
      s.dims = full.spaces;
    }
  }
  return s;
}

ValidationReport validate_strategy(const StrategyOperator& s) {
  ValidationReport rep;
  int r = static_cast<int>(s.dims.factors.size()) / 2;
  bool shape_ok = static_cast<int>(s.marginals.size()) == r - 1 &&
                  static_cast<int>(s.dims.factors.size()) == 2 * r;
  rep.add("marginal count", shape_ok ? 0.0 : 1.0, 0.0);
  if (!shape_ok) return rep;

  rep.add("positive semidefinite", std::max(0.0, -min_eigenvalue(s.x)), Tol::psd);

  auto marginal_at = [&](int k) -> const CMat& {
    return (k == r) ? s.x : s.marginals[k - 1];
  };
  auto spaces_upto = [&](int k) {
    std::vector<std::string> names;
    for (int i = 0; i < 2 * k; ++i) names.push_back(s.dims.factors[i].name);
    return s.dims.subset(names);
  };

  for (int k = r; k >= 1; --k) {
    LabeledOp xk(marginal_at(k), spaces_upto(k));
    CMat reduced = partial_trace(xk, {y_name(k)}).m;
    CMat expected;
    if (k == 1) {
      expected = identity(s.dims.dim_of(x_name(1)));
    } else {
      expected = tensor(marginal_at(k - 1), identity(s.dims.dim_of(x_name(k))));
    }
    double res = (reduced - expected).cwiseAbs().maxCoeff();
    rep.add("causality recursion k=" + std::to_string(k), res, kStrategyRecursionTol);
  }
  return rep;
}

double strategy_value(const WinningOperator& q, const StrategyOperator& s) {
  if (q.q1.rows() != s.x.rows())
    throw DimensionError("winning operator and strategy dimensions differ");
  return (q.q1.adjoint() * s.x).trace().real();
}

}  // namespace threshrep
