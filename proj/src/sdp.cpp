/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "threshrep/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace threshrep {

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::optimal: return "optimal";
    case SdpStatus::max_iter: return "max_iter";
    case SdpStatus::infeasible: return "infeasible";
  }
  return "unknown";
}

long SdpProblem::dimension() const {
  long total = 0;
  for (long d : block_dims) total += d;
  return total;
}

SdpProblem SdpProblem::single_block(CMat objective) {
  SdpProblem p;
  p.block_dims = {objective.rows()};
  p.objective.push_back(std::move(objective));
  return p;
}

void SdpProblem::add_constraint(const CMat& a, double rhs, int block) {
  add_constraint({{block, a}}, rhs);
}

void SdpProblem::add_constraint(const std::vector<std::pair<int, CMat>>& terms,
                                double rhs) {
  Constraint c;
  c.rhs = rhs;
  for (const auto& [block, a] : terms) {
    if (block < 0 || block >= static_cast<int>(block_dims.size()))
      throw DimensionError("constraint block index out of range");
    if (a.rows() != block_dims[block] || a.cols() != block_dims[block])
      throw DimensionError("constraint matrix does not match block dimension");
    for (long i = 0; i < a.rows(); ++i)
      for (long j = 0; j < a.cols(); ++j)
        if (a(i, j) != complexd(0.0, 0.0))
          c.entries.push_back({block, i, j, a(i, j)});
  }
  constraints.push_back(std::move(c));
}

namespace {

// Internal real symmetric SDP in min form:
//   min sum_b <C_b, X_b>  s.t.  <A_j, X> = rhs_j,  X_b >= 0.
struct RealEnt {
  int b = 0;
  long i = 0, j = 0;
  double v = 0.0;
};

struct RealProblem {
  std::vector<long> dims;
  std::vector<Eigen::MatrixXd> C;
  std::vector<std::vector<RealEnt>> A;
  Eigen::VectorXd rhs;
};

struct RealResult {
  std::vector<Eigen::MatrixXd> X, Z;
  Eigen::VectorXd y;
  int iterations = 0;
  bool converged = false;
  bool diverged = false;
};

using RMat = Eigen::MatrixXd;

double a_dot(const std::vector<RealEnt>& a, const std::vector<RMat>& X) {
  double s = 0.0;
  for (const auto& e : a) s += e.v * X[e.b](e.i, e.j);
  return s;
}

std::vector<RMat> zero_blocks(const std::vector<long>& dims) {
  std::vector<RMat> out;
  out.reserve(dims.size());
  for (long d : dims) out.push_back(RMat::Zero(d, d));
  return out;
}

// Largest alpha with X + alpha dX >= 0, given the Cholesky factor of X.
double max_psd_step(const std::vector<Eigen::LLT<RMat>>& llt,
                    const std::vector<RMat>& dX) {
  double alpha = std::numeric_limits<double>::infinity();
  for (size_t b = 0; b < dX.size(); ++b) {
    const RMat& l = llt[b].matrixL();
    RMat w = l.triangularView<Eigen::Lower>().solve(dX[b]);
    w = l.triangularView<Eigen::Lower>().solve(w.transpose()).transpose();
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (w + w.transpose()),
                                           Eigen::EigenvaluesOnly);
    double lmin = es.eigenvalues().minCoeff();
    if (lmin < -1e-14) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

// Predictor-corrector interior-point iteration with the HKM scaling
// K(U) = (X U Z^-1 + Z^-1 U X) / 2 and a shared Schur complement per
// iteration.
RealResult ipm_solve(const RealProblem& p, int max_iter) {
  const int nb = static_cast<int>(p.dims.size());
  const int m = static_cast<int>(p.rhs.size());
  long ntot = 0;
  for (long d : p.dims) ntot += d;

  double norm_c = 0.0;
  for (const auto& c : p.C) if (c.size() > 0) norm_c = std::max(norm_c, c.cwiseAbs().maxCoeff());
  double norm_b = (m > 0) ? p.rhs.cwiseAbs().maxCoeff() : 0.0;

  RealResult res;
  res.y = Eigen::VectorXd::Zero(m);
  double xi = std::max(10.0, norm_b);
  double eta = std::max(10.0, norm_c);
  for (long d : p.dims) {
    res.X.push_back(xi * RMat::Identity(d, d));
    res.Z.push_back(eta * RMat::Identity(d, d));
  }

  const double eps = 1e-10;
  int stall = 0;

  for (int iter = 1; iter <= max_iter; ++iter) {
    res.iterations = iter;

    Eigen::VectorXd rp(m);
    for (int j = 0; j < m; ++j) rp(j) = p.rhs(j) - a_dot(p.A[j], res.X);
    std::vector<RMat> rd = zero_blocks(p.dims);
    for (int b = 0; b < nb; ++b) rd[b] = p.C[b] - res.Z[b];
    for (int j = 0; j < m; ++j)
      for (const auto& e : p.A[j]) rd[e.b](e.i, e.j) -= res.y(j) * e.v;

    double rp_inf = (m > 0) ? rp.cwiseAbs().maxCoeff() : 0.0;
    double rd_inf = 0.0;
    double cx = 0.0;
    for (int b = 0; b < nb; ++b) {
      rd_inf = std::max(rd_inf, rd[b].cwiseAbs().maxCoeff());
      cx += (p.C[b].cwiseProduct(res.X[b])).sum();
    }
    double by = p.rhs.dot(res.y);
    double gap_rel = std::abs(cx - by) / (1.0 + std::abs(cx) + std::abs(by));
    if (rp_inf / (1.0 + norm_b) <= eps && rd_inf / (1.0 + norm_c) <= eps &&
        gap_rel <= eps) {
      res.converged = true;
      return res;
    }

    double mu = 0.0;
    for (int b = 0; b < nb; ++b) mu += (res.X[b].cwiseProduct(res.Z[b])).sum();
    mu /= static_cast<double>(ntot);

    std::vector<Eigen::LLT<RMat>> lltX, lltZ;
    std::vector<RMat> Zinv;
    for (int b = 0; b < nb; ++b) {
      lltX.emplace_back(res.X[b]);
      lltZ.emplace_back(res.Z[b]);
      if (lltX.back().info() != Eigen::Success || lltZ.back().info() != Eigen::Success) {
        res.diverged = true;
        return res;
      }
      Zinv.push_back(lltZ[b].solve(RMat::Identity(p.dims[b], p.dims[b])));
    }

    auto k_apply = [&](const std::vector<RMat>& u) {
      std::vector<RMat> out = zero_blocks(p.dims);
      for (int b = 0; b < nb; ++b) {
        RMat s = res.X[b] * u[b] * Zinv[b];
        out[b] = 0.5 * (s + s.transpose());
      }
      return out;
    };

    // Schur matrix M_jk = <A_j, K(A_k)>, built once and reused by both the
    // predictor and the corrector.
    RMat M(m, m);
    for (int k = 0; k < m; ++k) {
      std::vector<RMat> s = zero_blocks(p.dims);
      for (const auto& e : p.A[k])
        s[e.b].noalias() += e.v * (res.X[e.b].col(e.i) * Zinv[e.b].row(e.j));
      for (int b = 0; b < nb; ++b) s[b] = 0.5 * (s[b] + s[b].transpose()).eval();
      for (int j = 0; j < m; ++j) M(j, k) = a_dot(p.A[j], s);
    }
    M = 0.5 * (M + M.transpose()).eval();

    Eigen::LDLT<RMat> ldlt(M);
    double ridge = 1e-13 * (1.0 + M.diagonal().cwiseAbs().maxCoeff());
    while (ldlt.info() != Eigen::Success && ridge < 1.0) {
      ldlt.compute(M + ridge * RMat::Identity(m, m));
      ridge *= 100.0;
    }

    // Solves dX + K(dZ) = R, dZ = rd - A*(dy), A(dX) = rp.
    auto newton = [&](const std::vector<RMat>& R, std::vector<RMat>& dX,
                      Eigen::VectorXd& dy, std::vector<RMat>& dZ) {
      std::vector<RMat> krd = k_apply(rd);
      Eigen::VectorXd v(m);
      for (int j = 0; j < m; ++j) {
        double g = 0.0;
        for (const auto& e : p.A[j]) g += e.v * (R[e.b](e.i, e.j) - krd[e.b](e.i, e.j));
        v(j) = rp(j) - g;
      }
      dy = ldlt.solve(v);
      std::vector<RMat> astar_dy = zero_blocks(p.dims);
      for (int j = 0; j < m; ++j)
        for (const auto& e : p.A[j]) astar_dy[e.b](e.i, e.j) += dy(j) * e.v;
      std::vector<RMat> kad = k_apply(astar_dy);
      dX.assign(nb, RMat());
      dZ.assign(nb, RMat());
      for (int b = 0; b < nb; ++b) {
        dZ[b] = rd[b] - astar_dy[b];
        RMat d = R[b] - krd[b] + kad[b];
        dX[b] = 0.5 * (d + d.transpose());
      }
    };

    // Predictor (affine direction, target mu = 0).
    std::vector<RMat> R(nb), dXa, dZa;
    Eigen::VectorXd dya;
    for (int b = 0; b < nb; ++b) R[b] = -res.X[b];
    newton(R, dXa, dya, dZa);

    double ap_aff = std::min(1.0, max_psd_step(lltX, dXa));
    double ad_aff = std::min(1.0, max_psd_step(lltZ, dZa));
    double mu_aff = 0.0;
    for (int b = 0; b < nb; ++b)
      mu_aff += ((res.X[b] + ap_aff * dXa[b]).cwiseProduct(res.Z[b] + ad_aff * dZa[b])).sum();
    mu_aff = std::max(0.0, mu_aff / static_cast<double>(ntot));
    double sigma = (mu > 0) ? std::pow(mu_aff / mu, 3.0) : 0.0;
    sigma = std::clamp(sigma, 0.0, 1.0);

    // Corrector with the Mehrotra second-order term.
    for (int b = 0; b < nb; ++b) {
      RMat corr = dXa[b] * dZa[b] * Zinv[b];
      R[b] = sigma * mu * Zinv[b] - res.X[b] - 0.5 * (corr + corr.transpose());
    }
    std::vector<RMat> dX, dZ;
    Eigen::VectorXd dy;
    newton(R, dX, dy, dZ);

    const double tau = 0.98;
    double ap = std::min(1.0, tau * max_psd_step(lltX, dX));
    double ad = std::min(1.0, tau * max_psd_step(lltZ, dZ));

    for (int b = 0; b < nb; ++b) {
      res.X[b] += ap * dX[b];
      res.Z[b] += ad * dZ[b];
      res.X[b] = 0.5 * (res.X[b] + res.X[b].transpose()).eval();
      res.Z[b] = 0.5 * (res.Z[b] + res.Z[b].transpose()).eval();
    }
    res.y += ad * dy;

    double xmax = 0.0, ymax = (m > 0) ? res.y.cwiseAbs().maxCoeff() : 0.0;
    for (int b = 0; b < nb; ++b) xmax = std::max(xmax, res.X[b].cwiseAbs().maxCoeff());
    if (xmax > 1e12 || ymax > 1e12 || !std::isfinite(xmax) || !std::isfinite(ymax)) {
      res.diverged = true;
      return res;
    }

    stall = (ap < 1e-3 && ad < 1e-3) ? stall + 1 : 0;
    if (stall >= 3) return res;
  }
  return res;
}

RMat embed(const CMat& a) {
  long d = a.rows();
  RMat t(2 * d, 2 * d);
  t.topLeftCorner(d, d) = a.real();
  t.bottomRightCorner(d, d) = a.real();
  t.topRightCorner(d, d) = -a.imag();
  t.bottomLeftCorner(d, d) = a.imag();
  return t;
}

CMat unembed(const RMat& y) {
  long d = y.rows() / 2;
  CMat x = 0.5 * (y.topLeftCorner(d, d) + y.bottomRightCorner(d, d)).cast<complexd>();
  x += complexd(0.0, 0.5) *
       (y.bottomLeftCorner(d, d) - y.topRightCorner(d, d)).cast<complexd>();
  return herm(x);
}

}  // namespace

SdpSolution solve_sdp(const SdpProblem& prob, const SolverOptions& opts) {
  const int nb = static_cast<int>(prob.block_dims.size());
  if (nb == 0 || static_cast<int>(prob.objective.size()) != nb)
    throw DimensionError("SDP problem needs one objective per block");
  for (int b = 0; b < nb; ++b)
    if (prob.objective[b].rows() != prob.block_dims[b] ||
        prob.objective[b].cols() != prob.block_dims[b])
      throw DimensionError("objective dimension does not match block");
  if (prob.constraints.empty())
    throw DimensionError("SDP problem has no constraints");

  bool complex_data = false;
  for (const auto& o : prob.objective)
    if (o.imag().cwiseAbs().maxCoeff() > 0) complex_data = true;
  for (const auto& c : prob.constraints)
    for (const auto& e : c.entries)
      if (e.value.imag() != 0.0) complex_data = true;

  const int m = static_cast<int>(prob.constraints.size());
  RealProblem rp;
  rp.rhs.resize(m);
  rp.A.resize(m);
  if (!complex_data) {
    rp.dims = prob.block_dims;
    for (const auto& o : prob.objective) {
      RMat c = -o.real();
      rp.C.push_back(0.5 * (c + c.transpose()));
    }
    for (int j = 0; j < m; ++j) {
      rp.rhs(j) = prob.constraints[j].rhs;
      for (const auto& e : prob.constraints[j].entries)
        rp.A[j].push_back({e.block, e.row, e.col, e.value.real()});
    }
  } else {
    for (long d : prob.block_dims) rp.dims.push_back(2 * d);
    for (const auto& o : prob.objective) rp.C.push_back(embed(-herm(o)));
    for (int j = 0; j < m; ++j) {
      rp.rhs(j) = 2.0 * prob.constraints[j].rhs;
      long d;
      for (const auto& e : prob.constraints[j].entries) {
        d = prob.block_dims[e.block];
        double re = e.value.real(), im = e.value.imag();
        rp.A[j].push_back({e.block, e.row, e.col, re});
        rp.A[j].push_back({e.block, e.row + d, e.col + d, re});
        if (im != 0.0) {
          rp.A[j].push_back({e.block, e.row, e.col + d, -im});
          rp.A[j].push_back({e.block, e.row + d, e.col, im});
        }
      }
    }
  }

  RealResult r = ipm_solve(rp, opts.max_iter);

  SdpSolution sol;
  sol.iterations = r.iterations;
  sol.y.resize(m);
  for (int j = 0; j < m; ++j) sol.y[j] = -r.y(j);

  std::vector<CMat> zc;
  for (int b = 0; b < nb; ++b) {
    if (complex_data) {
      sol.x.push_back(unembed(r.X[b]));
      zc.push_back(unembed(r.Z[b]));
    } else {
      sol.x.push_back(herm(r.X[b].cast<complexd>()));
      zc.push_back(herm(r.Z[b].cast<complexd>()));
    }
  }

  for (int b = 0; b < nb; ++b)
    sol.primal_value += (prob.objective[b].adjoint() * sol.x[b]).trace().real();
  for (int j = 0; j < m; ++j) sol.dual_value += sol.y[j] * prob.constraints[j].rhs;
  sol.gap = sol.dual_value - sol.primal_value;

  for (int j = 0; j < m; ++j) {
    complexd v = 0.0;
    for (const auto& e : prob.constraints[j].entries)
      v += std::conj(e.value) * sol.x[e.block](e.row, e.col);
    sol.primal_residual =
        std::max(sol.primal_residual, std::abs(v - prob.constraints[j].rhs));
  }
  for (int b = 0; b < nb; ++b) {
    CMat zu = -herm(prob.objective[b]);
    for (int j = 0; j < m; ++j)
      for (const auto& e : prob.constraints[j].entries)
        if (e.block == b) zu(e.row, e.col) += sol.y[j] * e.value;
    sol.dual_residual = std::max(sol.dual_residual, (zu - zc[b]).cwiseAbs().maxCoeff());
    sol.dual_residual = std::max(sol.dual_residual, std::max(0.0, -min_eigenvalue(zc[b])));
    sol.primal_residual = std::max(sol.primal_residual,
                                   std::max(0.0, -min_eigenvalue(sol.x[b])));
  }

  if (r.diverged) {
    sol.status = SdpStatus::infeasible;
  } else if (std::abs(sol.gap) <= opts.gap_tol && sol.primal_residual <= opts.feas_tol &&
             sol.dual_residual <= opts.feas_tol) {
    sol.status = SdpStatus::optimal;
  } else {
    sol.status = SdpStatus::max_iter;
  }
  return sol;
}

SdpProblem build_value_sdp(const WinningOperator& q) {
  const int r = static_cast<int>(q.spaces.factors.size()) / 2;
  if (r < 1 || static_cast<int>(q.spaces.factors.size()) != 2 * r)
    throw DimensionError("winning operator spaces must be Y1,X1,...,Yr,Xr");

  std::vector<long> dy(r), dx(r);
  for (int i = 0; i < r; ++i) {
    dy[i] = q.spaces.dim_of(y_name(i + 1));
    dx[i] = q.spaces.dim_of(x_name(i + 1));
  }

  SdpProblem prob;
  std::vector<long> round_dim(r);
  long d = 1;
  for (int i = 0; i < r; ++i) {
    d *= dy[i] * dx[i];
    round_dim[i] = d;
    prob.block_dims.push_back(d);
    prob.objective.push_back(CMat::Zero(d, d));
  }
  prob.objective[r - 1] = herm(q.q1);

  auto for_each_herm_basis = [](long s, const std::function<void(const CMat&)>& fn) {
    for (long a = 0; a < s; ++a) {
      CMat h = CMat::Zero(s, s);
      h(a, a) = 1.0;
      fn(h);
    }
    for (long a = 0; a < s; ++a)
      for (long b = a + 1; b < s; ++b) {
        CMat h = CMat::Zero(s, s);
        h(a, b) = 1.0;
        h(b, a) = 1.0;
        fn(h);
        h(a, b) = complexd(0.0, 1.0);
        h(b, a) = complexd(0.0, -1.0);
        fn(h);
      }
  };

  // Round 1: Tr_{Y1} X^(1) = I_{X1}.
  for_each_herm_basis(dx[0], [&](const CMat& h) {
    CMat a = tensor(identity(dy[0]), h);
    prob.add_constraint(a, h.trace().real(), 0);
  });

  // Round k: Tr_{Yk} X^(k) = X^(k-1) (x) I_{Xk}, paired against a Hermitian
  // basis of the (previous rounds) (x) Xk space.
  for (int k = 2; k <= r; ++k) {
    long dprev = round_dim[k - 2];
    long dyk = dy[k - 1], dxk = dx[k - 1];
    for_each_herm_basis(dprev * dxk, [&](const CMat& h) {
      long dk = dprev * dyk * dxk;
      CMat a = CMat::Zero(dk, dk);
      for (long p = 0; p < dprev; ++p)
        for (long pp = 0; pp < dprev; ++pp)
          for (long x = 0; x < dxk; ++x)
            for (long xp = 0; xp < dxk; ++xp) {
              complexd v = h(p * dxk + x, pp * dxk + xp);
              if (v == complexd(0.0, 0.0)) continue;
              for (long y = 0; y < dyk; ++y)
                a((p * dyk + y) * dxk + x, (pp * dyk + y) * dxk + xp) = v;
            }
      CMat bmat = CMat::Zero(dprev, dprev);
      for (long p = 0; p < dprev; ++p)
        for (long pp = 0; pp < dprev; ++pp)
          for (long x = 0; x < dxk; ++x) bmat(p, pp) += h(p * dxk + x, pp * dxk + x);
      prob.add_constraint({{k - 1, a}, {k - 2, CMat(-bmat)}}, 0.0);
    });
  }
  return prob;
}

SdpSolution solve_value_sdp(const WinningOperator& q, const SolverOptions& opts) {
  return solve_sdp(build_value_sdp(q), opts);
}

namespace {

double clamp_value(double v) {
  if (v < -1e-4 || v > 1.0 + 1e-4)
    throw ValidationError("solved value " + std::to_string(v) + " outside [0,1]");
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace

double optimal_value(const ProtocolSpec& p, const SolverOptions& opts) {
  WinningOperator q = compile_winning_operator(p);
  SdpSolution sol = solve_value_sdp(q, opts);
  if (sol.status == SdpStatus::infeasible)
    throw ValidationError("value SDP reported infeasible");
  return clamp_value(sol.primal_value);
}

double optimal_threshold_value(const ThresholdTask& t, const SolverOptions& opts) {
  auto [spec, q] = compile_threshold(t);
  SdpSolution sol = solve_value_sdp(q, opts);
  if (sol.status == SdpStatus::infeasible)
    throw ValidationError("value SDP reported infeasible");
  return clamp_value(sol.primal_value);
}

}  // namespace threshrep
