/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "threshrep/protocol.hpp"

#include <cmath>

namespace threshrep {

std::string x_name(int round) { return "X" + std::to_string(round); }
std::string y_name(int round) { return "Y" + std::to_string(round); }
std::string z_name(int round) { return "Z" + std::to_string(round); }
std::string w_name(int round) { return "W" + std::to_string(round); }

namespace {

std::string inst(const std::string& base, int j) {
  return base + "#" + std::to_string(j);
}

SpaceDims rho_spaces(const ProtocolSpec& p) {
  return SpaceDims({{x_name(1), p.x_dims[0]}, {z_name(1), p.z_dims[0]}});
}

SpaceDims povm_spaces(const ProtocolSpec& p) {
  return SpaceDims({{y_name(p.r), p.y_dims[p.r - 1]}, {z_name(p.r), p.z_dims[p.r - 1]}});
}

}  // namespace

ProtocolSpec make_protocol(int r, std::vector<int> x_dims, std::vector<int> y_dims,
                           std::vector<int> z_dims, CMat rho, std::vector<CMat> psi,
                           CMat p0, CMat p1) {
  if (r < 1) throw DimensionError("round count must be positive");
  if (static_cast<int>(x_dims.size()) != r || static_cast<int>(y_dims.size()) != r ||
      static_cast<int>(z_dims.size()) != r)
    throw DimensionError("dimension lists must have r entries");
  if (static_cast<int>(psi.size()) != r - 1)
    throw DimensionError("expected r-1 verifier channels");

  ProtocolSpec p;
  p.r = r;
  p.x_dims = std::move(x_dims);
  p.y_dims = std::move(y_dims);
  p.z_dims = std::move(z_dims);
  p.rho = DensityOperator(std::move(rho),
                          SpaceDims({{x_name(1), p.x_dims[0]}, {z_name(1), p.z_dims[0]}}));
  for (int i = 0; i < r - 1; ++i) {
    SpaceDims in({{y_name(i + 1), p.y_dims[i]}, {z_name(i + 1), p.z_dims[i]}});
    SpaceDims out({{x_name(i + 2), p.x_dims[i + 1]}, {z_name(i + 2), p.z_dims[i + 1]}});
    p.psi.emplace_back(std::move(psi[i]), std::move(in), std::move(out));
  }
  p.povm = BinaryPOVM(std::move(p0), std::move(p1),
                      SpaceDims({{y_name(r), p.y_dims[r - 1]}, {z_name(r), p.z_dims[r - 1]}}));
  return p;
}

ValidationReport validate(const ProtocolSpec& p) {
  ValidationReport rep;
  rep.add("round count positive", p.r >= 1 ? 0.0 : 1.0, 0.0);
  if (p.r < 1) return rep;
  bool dims_ok = p.rho.op.spaces == rho_spaces(p) && p.povm.spaces == povm_spaces(p) &&
                 static_cast<int>(p.psi.size()) == p.r - 1;
  for (int i = 0; i < static_cast<int>(p.psi.size()) && dims_ok; ++i) {
    SpaceDims in({{y_name(i + 1), p.y_dims[i]}, {z_name(i + 1), p.z_dims[i]}});
    SpaceDims out({{x_name(i + 2), p.x_dims[i + 1]}, {z_name(i + 2), p.z_dims[i + 1]}});
    dims_ok = p.psi[i].in_spaces == in && p.psi[i].out_spaces == out;
  }
  rep.add("declared dimensions consistent", dims_ok ? 0.0 : 1.0, 0.0);
  if (!dims_ok) return rep;

  for (const auto& item : validate(p.rho).items)
    rep.add("rho: " + item.name, item.residual, item.tol);
  for (size_t i = 0; i < p.psi.size(); ++i)
    for (const auto& item : validate(p.psi[i]).items)
      rep.add("psi" + std::to_string(i + 2) + ": " + item.name, item.residual, item.tol);
  for (const auto& item : validate(p.povm).items)
    rep.add("povm: " + item.name, item.residual, item.tol);
  return rep;
}

ValidationReport validate(const ProverProgram& b, const ProtocolSpec& p) {
  ValidationReport rep;
  bool shape_ok = static_cast<int>(b.phi.size()) == p.r &&
                  static_cast<int>(b.w_dims.size()) == std::max(0, p.r - 1);
  rep.add("channel count matches rounds", shape_ok ? 0.0 : 1.0, 0.0);
  if (!shape_ok) return rep;

  bool dims_ok = true;
  for (int i = 0; i < p.r; ++i) {
    SpaceDims in = SpaceDims::single(x_name(i + 1), p.x_dims[i]);
    if (i > 0) in = in.concat(SpaceDims::single(w_name(i), b.w_dims[i - 1]));
    SpaceDims out = SpaceDims::single(y_name(i + 1), p.y_dims[i]);
    if (i < p.r - 1) out = out.concat(SpaceDims::single(w_name(i + 1), b.w_dims[i]));
    dims_ok = dims_ok && b.phi[i].in_spaces == in && b.phi[i].out_spaces == out;
  }
  rep.add("channel spaces chain correctly", dims_ok ? 0.0 : 1.0, 0.0);
  if (!dims_ok) return rep;

  for (int i = 0; i < p.r; ++i)
    for (const auto& item : validate(b.phi[i]).items)
      rep.add("phi" + std::to_string(i + 1) + ": " + item.name, item.residual, item.tol);
  return rep;
}

double simulate(const ProtocolSpec& p, const ProverProgram& b) {
  {
    auto rep = validate(b, p);
    if (!rep.pass()) throw ValidationError("prover program invalid:\n" + rep.summary());
  }
  DensityOperator state = p.rho;
  for (int i = 0; i < p.r; ++i) {
    state = apply_channel(b.phi[i], state);
    if (i < p.r - 1) state = apply_channel(p.psi[i], state);
  }
  LabeledOp fin = reorder(state.op, povm_spaces(p).names());
  return (p.povm.p1.adjoint() * fin.m).trace().real();
}

WinningOperator compile_winning_operator(const ProtocolSpec& p) {
  // Contract the verifier's network over her memory, leaving the prover's
  // legs open; the final effect enters transposed.
  LabeledOp acc = p.rho.op;
  for (const auto& psi : p.psi) acc = contract(acc, psi.as_labeled());
  LabeledOp effect = transpose(LabeledOp(p.povm.p1, povm_spaces(p)));
  acc = contract(acc, effect);

  std::vector<std::string> order;
  for (int i = 1; i <= p.r; ++i) {
    order.push_back(y_name(i));
    order.push_back(x_name(i));
  }
  LabeledOp q = reorder(acc, order);
  return WinningOperator{herm(q.m.transpose()), q.spaces};
}

namespace {

// Tensor n instance copies of a labeled operator, giving each factor an
// instance suffix, then group factors as base-major: all instances of the
// first base factor, then all instances of the second, and so on.
LabeledOp instance_tensor(const LabeledOp& one, int n) {
  LabeledOp acc;
  for (int j = 1; j <= n; ++j) {
    SpaceDims sp;
    for (const auto& f : one.spaces.factors)
      sp = sp.concat(SpaceDims::single(inst(f.name, j), f.dim));
    LabeledOp copy(one.m, sp);
    acc = (j == 1) ? copy : tensor(acc, copy);
  }
  std::vector<std::string> order;
  for (const auto& f : one.spaces.factors)
    for (int j = 1; j <= n; ++j) order.push_back(inst(f.name, j));
  return reorder(acc, order);
}

}  // namespace

std::pair<ProtocolSpec, WinningOperator> compile_threshold(const ThresholdTask& t) {
  if (t.n < 1) throw DimensionError("instance count must be positive");
  if (t.k < 0 || t.k > t.n) throw DimensionError("threshold k must satisfy 0 <= k <= n");
  const ProtocolSpec& base = t.base;
  {
    auto rep = validate(base);
    if (!rep.pass()) throw ValidationError("base protocol invalid:\n" + rep.summary());
  }

  std::vector<int> xs, ys, zs;
  for (int i = 0; i < base.r; ++i) {
    auto np = [&](int d) {
      long v = 1;
      for (int j = 0; j < t.n; ++j) {
        v *= d;
        if (v > max_total_dim())
          throw CapExceededError("instance too large for exact compilation; "
                                 "use bounds-only mode");
      }
      return static_cast<int>(v);
    };
    xs.push_back(np(base.x_dims[i]));
    ys.push_back(np(base.y_dims[i]));
    zs.push_back(np(base.z_dims[i]));
  }

  CMat rho_c = instance_tensor(base.rho.op, t.n).m;

  std::vector<CMat> psi_c;
  for (const auto& psi : base.psi)
    psi_c.push_back(instance_tensor(psi.as_labeled(), t.n).m);

  // P1^(n,k): sum over outcome strings with at least k wins.
  long dy_dz = base.povm.p0.rows();
  long total = 1;
  for (int j = 0; j < t.n; ++j) {
    total *= dy_dz;
    if (total > max_total_dim())
      throw CapExceededError("instance too large for exact compilation; "
                             "use bounds-only mode");
  }
  CMat p1_c = CMat::Zero(total, total);
  for (unsigned long bits = 0; bits < (1ul << t.n); ++bits) {
    if (static_cast<int>(__builtin_popcountl(bits)) < t.k) continue;
    LabeledOp term;
    for (int j = 0; j < t.n; ++j) {
      bool win = (bits >> j) & 1ul;
      SpaceDims sp;
      for (const auto& f : base.povm.spaces.factors)
        sp = sp.concat(SpaceDims::single(inst(f.name, j + 1), f.dim));
      LabeledOp factor(win ? base.povm.p1 : base.povm.p0, sp);
      term = (j == 0) ? factor : tensor(term, factor);
    }
    std::vector<std::string> order;
    for (const auto& f : base.povm.spaces.factors)
      for (int j = 1; j <= t.n; ++j) order.push_back(inst(f.name, j));
    p1_c += reorder(term, order).m;
  }
  CMat p0_c = identity(total) - p1_c;

  ProtocolSpec compound = make_protocol(base.r, xs, ys, zs, std::move(rho_c),
                                        std::move(psi_c), std::move(p0_c),
                                        std::move(p1_c));
  WinningOperator q = compile_winning_operator(compound);
  return {std::move(compound), std::move(q)};
}

ThresholdTask restrict_to_subset(const ThresholdTask& t, const std::set<int>& s) {
  if (s.empty()) throw DimensionError("subset must be nonempty");
  for (int j : s)
    if (j < 1 || j > t.n) throw DimensionError("subset element out of range");
  int m = static_cast<int>(s.size());
  return ThresholdTask{t.base, m, m};
}

ProtocolSpec builtin_hedging_protocol() {
  // The verifier shares a maximally entangled pair and accepts on the
  // projector onto cos(pi/8)|00> + sin(pi/8)|11>.
  const double c = std::cos(M_PI / 8.0), s = std::sin(M_PI / 8.0);
  CVec u(4);
  u << c, 0.0, 0.0, s;
  CVec bell(4);
  bell << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
  CMat rho = bell * bell.adjoint();
  CMat p1 = u * u.adjoint();
  CMat p0 = identity(4) - p1;
  return make_protocol(1, {2}, {2}, {2}, std::move(rho), {}, std::move(p0),
                       std::move(p1));
}

ProtocolSpec builtin_coin_protocol() {
  // The verifier keeps a uniformly random bit in Z1 and sends |0>; the
  // prover wins by guessing the bit.
  CMat rho = CMat::Zero(4, 4);
  rho(0, 0) = 0.5;  // |0>_X |0>_Z
  rho(1, 1) = 0.5;  // |0>_X |1>_Z
  CMat p1 = CMat::Zero(4, 4);
  p1(0, 0) = 1.0;  // |0>_Y |0>_Z
  p1(3, 3) = 1.0;  // |1>_Y |1>_Z
  CMat p0 = identity(4) - p1;
  return make_protocol(1, {2}, {2}, {2}, std::move(rho), {}, std::move(p0),
                       std::move(p1));
}

ProtocolSpec builtin_always_accept_protocol() {
  CMat rho = CMat::Zero(4, 4);
  rho(0, 0) = 1.0;
  CMat p1 = identity(4);
  CMat p0 = CMat::Zero(4, 4);
  return make_protocol(1, {2}, {2}, {2}, std::move(rho), {}, std::move(p0),
                       std::move(p1));
}

}  // namespace threshrep
