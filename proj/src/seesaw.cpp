/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "threshrep/seesaw.hpp"

#include <algorithm>

#include "threshrep/random.hpp"

namespace threshrep {

namespace {

// Prover round i as an isometry V_i: X_i (x) W_{i-1} -> Y_i (x) W_i.
// The last round's memory is an environment that gets traced out.
struct RoundShape {
  long din = 1;      // X_i * W_{i-1}
  long dout = 1;     // Y_i * W_i (kept part only for the last round: Y_r)
  long denv = 1;     // 1 except the last round, where it is the traced W_r
  SpaceDims in, out; // named spaces of the Choi (env excluded)
};

ChoiOperator round_choi(const RoundShape& s, const CMat& v) {
  std::vector<CMat> kraus;
  for (long e = 0; e < s.denv; ++e) {
    CMat k(s.dout, s.din);
    for (long a = 0; a < s.dout; ++a)
      for (long i = 0; i < s.din; ++i) k(a, i) = v(a * s.denv + e, i);
    kraus.push_back(std::move(k));
  }
  return choi_from_kraus(kraus, s.in, s.out);
}

// Environment of round i: everything else contracted down to the spaces of
// J_i. The value is sum_{s,t} K[s,t] J_i[s,t], linear in J_i.
CMat round_environment(const ProtocolSpec& p, const std::vector<RoundShape>& shapes,
                       const std::vector<CMat>& v, int skip) {
  LabeledOp acc = p.rho.op;
  for (int m = 0; m < p.r; ++m) {
    if (m != skip) acc = contract(acc, round_choi(shapes[m], v[m]).as_labeled());
    if (m < p.r - 1) acc = contract(acc, p.psi[m].as_labeled());
  }
  acc = contract(acc, transpose(LabeledOp(p.povm.p1, p.povm.spaces)));
  return reorder(acc, shapes[skip].in.concat(shapes[skip].out).names()).m;
}

double pair_value(const CMat& k, const CMat& j) {
  return k.cwiseProduct(j).sum().real();
}

// Thin-SVD polar factor, the isometry maximizing Re<V, G>.
CMat polar_isometry(const CMat& g) {
  Eigen::JacobiSVD<CMat> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

double see_saw_lower_bound(const ProtocolSpec& p, int restarts, uint64_t seed) {
  {
    auto rep = validate(p);
    if (!rep.pass()) throw ValidationError("protocol invalid:\n" + rep.summary());
  }
  if (restarts < 1) restarts = 1;

  std::vector<RoundShape> shapes(p.r);
  long dw_prev = 1;
  for (int i = 0; i < p.r; ++i) {
    RoundShape& s = shapes[i];
    s.din = static_cast<long>(p.x_dims[i]) * dw_prev;
    s.in = SpaceDims::single(x_name(i + 1), p.x_dims[i]);
    if (i > 0) s.in = s.in.concat(SpaceDims::single(w_name(i), static_cast<int>(dw_prev)));
    if (i + 1 < p.r) {
      long dw = s.din * p.y_dims[i];
      s.dout = p.y_dims[i] * dw;
      s.out = SpaceDims::single(y_name(i + 1), p.y_dims[i])
                  .concat(SpaceDims::single(w_name(i + 1), static_cast<int>(dw)));
      dw_prev = dw;
    } else {
      s.dout = p.y_dims[i];
      s.denv = s.din * p.y_dims[i];
      s.out = SpaceDims::single(y_name(i + 1), p.y_dims[i]);
    }
  }

  double best = 0.0;
  for (int rs = 0; rs < restarts; ++rs) {
    Rng rng(seed * 1000003ULL + static_cast<uint64_t>(rs));
    std::vector<CMat> v(p.r);
    for (int i = 0; i < p.r; ++i)
      v[i] = random_isometry(rng, shapes[i].dout * shapes[i].denv, shapes[i].din);

    double val = 0.0, prev = -1.0;
    for (int sweep = 0; sweep < 200 && val - prev > 1e-12; ++sweep) {
      prev = val;
      for (int i = 0; i < p.r; ++i) {
        const RoundShape& s = shapes[i];
        CMat k = round_environment(p, shapes, v, i);
        // Gradient of the value with respect to conj(V_i).
        CMat g = CMat::Zero(s.dout * s.denv, s.din);
        for (long ap = 0; ap < s.dout; ++ap)
          for (long ip = 0; ip < s.din; ++ip)
            for (long a = 0; a < s.dout; ++a)
              for (long in = 0; in < s.din; ++in) {
                complexd kv = k(in * s.dout + a, ip * s.dout + ap);
                if (kv == complexd(0.0, 0.0)) continue;
                for (long e = 0; e < s.denv; ++e)
                  g(ap * s.denv + e, ip) += kv * v[i](a * s.denv + e, in);
              }
        v[i] = polar_isometry(g);
        if (i == p.r - 1) val = pair_value(k, round_choi(s, v[i]).matrix);
      }
    }
    best = std::max(best, val);
  }
  return std::clamp(best, 0.0, 1.0);
}

double see_saw_lower_bound(const ThresholdTask& t, int restarts, uint64_t seed) {
  return see_saw_lower_bound(compile_threshold(t).first, restarts, seed);
}

}  // namespace threshrep
