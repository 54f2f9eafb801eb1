/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "threshrep/random.hpp"

#include <cmath>

namespace threshrep {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform(), u2 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

complexd Rng::complex_normal() {
  return complexd(normal(), normal()) / std::sqrt(2.0);
}

CMat random_gaussian(Rng& rng, long rows, long cols) {
  CMat m(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  return m;
}

CMat random_isometry(Rng& rng, long rows, long cols) {
  if (rows < cols) throw DimensionError("isometry needs rows >= cols");
  CMat g = random_gaussian(rng, rows, cols);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ() * CMat::Identity(rows, cols);
  // Fix phases so the distribution is Haar.
  CMat r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (long j = 0; j < cols; ++j) {
    complexd d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

CMat random_unitary(Rng& rng, long dim) { return random_isometry(rng, dim, dim); }

DensityOperator random_density(Rng& rng, const SpaceDims& spaces) {
  long d = spaces.total_dim();
  CMat g = random_gaussian(rng, d, d);
  CMat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(std::move(rho), spaces);
}

ChoiOperator random_cptp_choi(Rng& rng, const SpaceDims& in, const SpaceDims& out,
                              long env_dim) {
  long din = in.total_dim(), dout = out.total_dim();
  if (env_dim <= 0) env_dim = din * dout;
  CMat v = random_isometry(rng, dout * env_dim, din);
  std::vector<CMat> kraus;
  for (long e = 0; e < env_dim; ++e) {
    CMat k(dout, din);
    for (long a = 0; a < dout; ++a)
      for (long i = 0; i < din; ++i) k(a, i) = v(a * env_dim + e, i);
    kraus.push_back(std::move(k));
  }
  return choi_from_kraus(kraus, in, out);
}

BinaryPOVM random_povm(Rng& rng, const SpaceDims& spaces) {
  long d = spaces.total_dim();
  CMat u = random_unitary(rng, d);
  Eigen::VectorXd lam(d);
  for (long i = 0; i < d; ++i) lam(i) = rng.uniform();
  CMat p1 = u * lam.asDiagonal() * u.adjoint();
  p1 = herm(p1);
  CMat p0 = identity(d) - p1;
  return BinaryPOVM(std::move(p0), std::move(p1), spaces);
}

}  // namespace threshrep
