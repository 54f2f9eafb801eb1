/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include "threshrep/protocol.hpp"
#include "threshrep/random.hpp"

namespace threshrep::testutil {

inline ProtocolSpec random_protocol(Rng& rng, int r, int max_dim) {
  auto pick = [&](int lo) {
    return lo + static_cast<int>(rng.uniform() * (max_dim - lo + 1));
  };
  std::vector<int> xs, ys, zs;
  for (int i = 0; i < r; ++i) {
    xs.push_back(pick(2));
    ys.push_back(pick(2));
    zs.push_back(pick(2));
  }
  CMat rho = random_density(rng, SpaceDims({{x_name(1), xs[0]}, {z_name(1), zs[0]}})).op.m;
  std::vector<CMat> psi;
  for (int i = 0; i < r - 1; ++i) {
    SpaceDims in({{y_name(i + 1), ys[i]}, {z_name(i + 1), zs[i]}});
    SpaceDims out({{x_name(i + 2), xs[i + 1]}, {z_name(i + 2), zs[i + 1]}});
    psi.push_back(random_cptp_choi(rng, in, out).matrix);
  }
  SpaceDims msp({{y_name(r), ys[r - 1]}, {z_name(r), zs[r - 1]}});
  BinaryPOVM povm = random_povm(rng, msp);
  return make_protocol(r, xs, ys, zs, std::move(rho), std::move(psi),
                       std::move(povm.p0), std::move(povm.p1));
}

inline ProverProgram random_prover(Rng& rng, const ProtocolSpec& p, int w_dim = 2) {
  ProverProgram b;
  for (int i = 0; i < p.r - 1; ++i) b.w_dims.push_back(w_dim);
  for (int i = 0; i < p.r; ++i) {
    SpaceDims in = SpaceDims::single(x_name(i + 1), p.x_dims[i]);
    if (i > 0) in = in.concat(SpaceDims::single(w_name(i), b.w_dims[i - 1]));
    SpaceDims out = SpaceDims::single(y_name(i + 1), p.y_dims[i]);
    if (i < p.r - 1) out = out.concat(SpaceDims::single(w_name(i + 1), b.w_dims[i]));
    b.phi.push_back(random_cptp_choi(rng, in, out));
  }
  return b;
}

// The prover that applies the identity in every round (requires matching
// question/answer dimensions).
inline ProverProgram identity_prover(const ProtocolSpec& p) {
  ProverProgram b;
  for (int i = 0; i < p.r - 1; ++i) b.w_dims.push_back(p.x_dims[i + 1]);
  for (int i = 0; i < p.r; ++i) {
    SpaceDims in = SpaceDims::single(x_name(i + 1), p.x_dims[i]);
    if (i > 0) in = in.concat(SpaceDims::single(w_name(i), b.w_dims[i - 1]));
    SpaceDims out = SpaceDims::single(y_name(i + 1), p.y_dims[i]);
    if (i < p.r - 1) out = out.concat(SpaceDims::single(w_name(i + 1), b.w_dims[i]));
    b.phi.push_back(identity_choi(in, out));
  }
  return b;
}

}  // namespace threshrep::testutil
