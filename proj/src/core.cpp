/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "threshrep/core.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>

namespace threshrep {

namespace {
std::atomic<int> g_max_dim{4096};
}

int max_total_dim() { return g_max_dim.load(); }

void set_max_total_dim(int dim) {
  if (dim < 1) throw DimensionError("max dimension must be positive");
  g_max_dim.store(dim);
}

SpaceDims::SpaceDims(std::vector<Factor> f) : factors(std::move(f)) {
  std::set<std::string> seen;
  for (const auto& fac : factors) {
    if (fac.dim < 1) throw DimensionError("space '" + fac.name + "' has dim < 1");
    if (!seen.insert(fac.name).second)
      throw DimensionError("duplicate space name '" + fac.name + "'");
  }
}

SpaceDims SpaceDims::single(const std::string& name, int dim) {
  return SpaceDims({Factor{name, dim}});
}

long SpaceDims::total_dim() const {
  long d = 1;
  for (const auto& f : factors) {
    d *= f.dim;
    if (d > max_total_dim())
      throw CapExceededError("instance too large: total dimension exceeds cap " +
                             std::to_string(max_total_dim()));
  }
  return d;
}

bool SpaceDims::has(const std::string& name) const {
  return std::any_of(factors.begin(), factors.end(),
                     [&](const Factor& f) { return f.name == name; });
}

int SpaceDims::index_of(const std::string& name) const {
  for (size_t i = 0; i < factors.size(); ++i)
    if (factors[i].name == name) return static_cast<int>(i);
  throw DimensionError("unknown space name '" + name + "'");
}

int SpaceDims::dim_of(const std::string& name) const {
  return factors[index_of(name)].dim;
}

std::vector<std::string> SpaceDims::names() const {
  std::vector<std::string> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(f.name);
  return out;
}

SpaceDims SpaceDims::concat(const SpaceDims& other) const {
  std::vector<Factor> f = factors;
  f.insert(f.end(), other.factors.begin(), other.factors.end());
  return SpaceDims(std::move(f));
}

SpaceDims SpaceDims::subset(const std::vector<std::string>& keep) const {
  std::vector<Factor> f;
  for (const auto& name : keep) f.push_back(factors[index_of(name)]);
  return SpaceDims(std::move(f));
}

SpaceDims SpaceDims::without(const std::set<std::string>& drop) const {
  std::vector<Factor> f;
  for (const auto& fac : factors)
    if (!drop.count(fac.name)) f.push_back(fac);
  return SpaceDims(std::move(f));
}

bool SpaceDims::operator==(const SpaceDims& other) const {
  if (factors.size() != other.factors.size()) return false;
  for (size_t i = 0; i < factors.size(); ++i)
    if (factors[i].name != other.factors[i].name ||
        factors[i].dim != other.factors[i].dim)
      return false;
  return true;
}

LabeledOp::LabeledOp(CMat mat, SpaceDims sp) : m(std::move(mat)), spaces(std::move(sp)) {
  long d = spaces.total_dim();
  if (m.rows() != d || m.cols() != d)
    throw DimensionError("matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " but spaces give dim " +
                         std::to_string(d));
}

CMat tensor(const CMat& a, const CMat& b) {
  long rows = a.rows() * b.rows();
  long cols = a.cols() * b.cols();
  if (rows > max_total_dim() || cols > max_total_dim())
    throw CapExceededError("instance too large: tensor dimension exceeds cap " +
                           std::to_string(max_total_dim()));
  CMat out(rows, cols);
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

LabeledOp tensor(const LabeledOp& a, const LabeledOp& b) {
  return LabeledOp(tensor(a.m, b.m), a.spaces.concat(b.spaces));
}

namespace {

// Row-major strides for a list of factor dims.
std::vector<long> strides(const std::vector<int>& dims) {
  std::vector<long> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
    s[i] = s[i + 1] * dims[i + 1];
  return s;
}

std::vector<int> factor_dims(const SpaceDims& sp) {
  std::vector<int> d;
  d.reserve(sp.factors.size());
  for (const auto& f : sp.factors) d.push_back(f.dim);
  return d;
}

}  // namespace

LabeledOp reorder(const LabeledOp& op, const std::vector<std::string>& order) {
  if (order.size() != op.spaces.factors.size())
    throw DimensionError("reorder must name every factor exactly once");
  std::vector<int> perm;
  perm.reserve(order.size());
  for (const auto& name : order) perm.push_back(op.spaces.index_of(name));
  {
    std::set<int> uniq(perm.begin(), perm.end());
    if (uniq.size() != perm.size())
      throw DimensionError("reorder must name every factor exactly once");
  }

  SpaceDims new_spaces = op.spaces.subset(order);
  auto old_dims = factor_dims(op.spaces);
  auto new_dims = factor_dims(new_spaces);
  auto old_str = strides(old_dims);
  auto new_str = strides(new_dims);
  long d = op.dim();
  size_t nf = old_dims.size();

  // index map: new flat index -> old flat index
  std::vector<long> map(d);
  std::vector<int> digits(nf, 0);
  for (long idx = 0; idx < d; ++idx) {
    long rem = idx;
    long old_idx = 0;
    for (size_t k = 0; k < nf; ++k) {
      long digit = rem / new_str[k];
      rem %= new_str[k];
      old_idx += digit * old_str[perm[k]];
    }
    map[idx] = old_idx;
  }

  CMat out(d, d);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) out(i, j) = op.m(map[i], map[j]);
  return LabeledOp(std::move(out), std::move(new_spaces));
}

LabeledOp partial_trace(const LabeledOp& op, const std::set<std::string>& traced) {
  for (const auto& name : traced)
    if (!op.spaces.has(name)) throw DimensionError("unknown space name '" + name + "'");
  std::vector<std::string> keep;
  for (const auto& f : op.spaces.factors)
    if (!traced.count(f.name)) keep.push_back(f.name);
  std::vector<std::string> order = keep;
  for (const auto& f : op.spaces.factors)
    if (traced.count(f.name)) order.push_back(f.name);
  LabeledOp re = reorder(op, order);

  SpaceDims kept_spaces = re.spaces.subset(keep);
  long dk = kept_spaces.total_dim();
  long dt = re.dim() / dk;
  CMat out = CMat::Zero(dk, dk);
  for (long i = 0; i < dk; ++i)
    for (long j = 0; j < dk; ++j)
      for (long t = 0; t < dt; ++t) out(i, j) += re.m(i * dt + t, j * dt + t);
  return LabeledOp(std::move(out), std::move(kept_spaces));
}

CMat partial_trace(const CMat& m, const SpaceDims& spaces,
                   const std::set<std::string>& traced) {
  if (m.rows() != m.cols() || m.rows() != spaces.total_dim())
    throw DimensionError("partial_trace: matrix dimension does not match spaces");
  return partial_trace(LabeledOp(m, spaces), traced).m;
}

LabeledOp partial_transpose(const LabeledOp& op, const std::set<std::string>& names) {
  for (const auto& name : names)
    if (!op.spaces.has(name)) throw DimensionError("unknown space name '" + name + "'");
  auto dims = factor_dims(op.spaces);
  auto str = strides(dims);
  size_t nf = dims.size();
  std::vector<bool> flip(nf, false);
  for (size_t k = 0; k < nf; ++k) flip[k] = names.count(op.spaces.factors[k].name) > 0;

  long d = op.dim();
  CMat out(d, d);
  std::vector<int> di(nf), dj(nf);
  for (long i = 0; i < d; ++i) {
    long rem = i;
    for (size_t k = 0; k < nf; ++k) {
      di[k] = static_cast<int>(rem / str[k]);
      rem %= str[k];
    }
    for (long j = 0; j < d; ++j) {
      long remj = j;
      for (size_t k = 0; k < nf; ++k) {
        dj[k] = static_cast<int>(remj / str[k]);
        remj %= str[k];
      }
      long si = 0, sj = 0;
      for (size_t k = 0; k < nf; ++k) {
        si += (flip[k] ? dj[k] : di[k]) * str[k];
        sj += (flip[k] ? di[k] : dj[k]) * str[k];
      }
      out(i, j) = op.m(si, sj);
    }
  }
  return LabeledOp(std::move(out), op.spaces);
}

LabeledOp transpose(const LabeledOp& op) {
  return LabeledOp(op.m.transpose(), op.spaces);
}

LabeledOp contract(const LabeledOp& a, const LabeledOp& b) {
  std::vector<std::string> shared;
  for (const auto& f : a.spaces.factors)
    if (b.spaces.has(f.name)) {
      if (b.spaces.dim_of(f.name) != f.dim)
        throw DimensionError("shared space '" + f.name + "' has mismatched dims");
      shared.push_back(f.name);
    }

  // Reorder a to (rest_a, shared) and b to (shared, rest_b).
  std::vector<std::string> rest_a, rest_b;
  for (const auto& f : a.spaces.factors) {
    bool is_shared = std::find(shared.begin(), shared.end(), f.name) != shared.end();
    if (!is_shared) rest_a.push_back(f.name);
  }
  for (const auto& f : b.spaces.factors) {
    bool is_shared = std::find(shared.begin(), shared.end(), f.name) != shared.end();
    if (!is_shared) rest_b.push_back(f.name);
  }
  std::vector<std::string> order_a = rest_a;
  order_a.insert(order_a.end(), shared.begin(), shared.end());
  std::vector<std::string> order_b = shared;
  order_b.insert(order_b.end(), rest_b.begin(), rest_b.end());

  LabeledOp ra = reorder(a, order_a);
  LabeledOp rb = reorder(b, order_b);

  SpaceDims out_spaces = ra.spaces.subset(rest_a).concat(rb.spaces.subset(rest_b));
  long da = out_spaces.subset(rest_a).total_dim();
  long db = out_spaces.subset(rest_b).total_dim();
  long ds = ra.dim() / da;
  if (static_cast<long>(da) * db > max_total_dim())
    throw CapExceededError("instance too large: contraction result exceeds cap");

  // R[(p q),(p' q')] = sum_{s s'} A[(p s),(p' s')] B[(s q),(s' q')]
  // which is the matrix product of A viewed as [(p p'),(s s')] and
  // B viewed as [(s s'),(q q')].
  Eigen::MatrixXcd am(da * da, ds * ds), bm(ds * ds, db * db);
  for (long p = 0; p < da; ++p)
    for (long pp = 0; pp < da; ++pp)
      for (long s = 0; s < ds; ++s)
        for (long sp = 0; sp < ds; ++sp)
          am(p * da + pp, s * ds + sp) = ra.m(p * ds + s, pp * ds + sp);
  for (long s = 0; s < ds; ++s)
    for (long sp = 0; sp < ds; ++sp)
      for (long q = 0; q < db; ++q)
        for (long qp = 0; qp < db; ++qp)
          bm(s * ds + sp, q * db + qp) = rb.m(s * db + q, sp * db + qp);
  Eigen::MatrixXcd rm = am * bm;

  CMat out(da * db, da * db);
  for (long p = 0; p < da; ++p)
    for (long pp = 0; pp < da; ++pp)
      for (long q = 0; q < db; ++q)
        for (long qp = 0; qp < db; ++qp)
          out(p * db + q, pp * db + qp) = rm(p * da + pp, q * db + qp);
  return LabeledOp(std::move(out), std::move(out_spaces));
}

CMat herm(const CMat& m) { return 0.5 * (m + m.adjoint()); }

double min_eigenvalue(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(herm(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool all_finite(const CMat& m) {
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

CMat identity(long dim) { return CMat::Identity(dim, dim); }

}  // namespace threshrep
