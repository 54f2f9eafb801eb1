/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "threshrep/bounds.hpp"

#include <cmath>
#include <limits>

#include "threshrep/core.hpp"
#include "threshrep/random.hpp"

namespace threshrep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_prob(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ValidationError(std::string(name) + " must lie in [0,1]");
}

}  // namespace

double binary_kl(double gamma, double delta) {
  check_prob(gamma, "gamma");
  check_prob(delta, "delta");
  double t1 = 0.0, t2 = 0.0;
  if (gamma > 0.0) {
    if (delta == 0.0) return kInf;
    t1 = gamma * std::log(gamma / delta);
  }
  if (gamma < 1.0) {
    if (delta == 1.0) return kInf;
    t2 = (1.0 - gamma) * std::log((1.0 - gamma) / (1.0 - delta));
  }
  return t1 + t2;
}

std::pair<double, double> ik_bound(int n, double gamma, double delta) {
  if (n < 1) throw ValidationError("n must be >= 1");
  if (!(delta <= gamma && gamma <= 1.0) || delta < 0.0)
    throw ValidationError("ik_bound requires 0 <= delta <= gamma <= 1");
  double kl = binary_kl(gamma, delta);
  double kl_form = std::exp(-static_cast<double>(n) * kl);
  double d = gamma - delta;
  double hoeffding = std::exp(-2.0 * n * d * d);
  return {kl_form, hoeffding};
}

double hedging_bound(int n, double p, int k) {
  if (n < 1 || k < 1 || k > n) throw ValidationError("need 1 <= k <= n");
  check_prob(p, "p");
  double d = static_cast<double>(k) / n - p;
  if (d <= 0.0)
    throw ValidationError("bound vacuous: k/n <= p requires no hedging");
  return std::exp(-2.0 * n * d * d);
}

namespace {

// Sum of Bin(n, p) point masses for j in [lo, hi], in log space.
double binom_range(int n, int lo, int hi, double p) {
  lo = std::max(lo, 0);
  hi = std::min(hi, n);
  if (lo > hi) return 0.0;
  if (p == 0.0) return (lo == 0) ? 1.0 : 0.0;
  if (p == 1.0) return (hi == n) ? 1.0 : 0.0;
  double lp = std::log(p), lq = std::log1p(-p);
  double lgn = std::lgamma(n + 1.0);
  long double sum = 0.0L;
  for (int j = lo; j <= hi; ++j) {
    double lg = lgn - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) + j * lp +
                (n - j) * lq;
    sum += std::exp(static_cast<long double>(lg));
  }
  return std::min(1.0, static_cast<double>(sum));
}

}  // namespace

double binomial_tail(int n, int k, double p) {
  if (n < 1 || k < 0 || k > n) throw ValidationError("need 0 <= k <= n, n >= 1");
  check_prob(p, "p");
  if (k == 0) return 1.0;
  return binom_range(n, k, n, p);
}

void validate_params(const ErrorParams& e) {
  if (!(0.0 <= e.a && e.a < e.b && e.b <= 1.0))
    throw ValidationError("need 0 <= a < b <= 1");
  if (!(0.0 < e.eps && e.eps < 1.0)) throw ValidationError("need 0 < eps < 1");
}

namespace {

std::optional<RepetitionPlan> certify(int n, double a, double b, double eps,
                                      bool tight) {
  int k = std::max(1, static_cast<int>(std::ceil(n * (a + b) / 2.0 - 1e-9)));
  if (k > n) return std::nullopt;
  double delta_eff = static_cast<double>(k) / n - a;
  double c_gap = b - static_cast<double>(k - 1) / n;
  if (delta_eff <= 0.0 || c_gap <= 0.0) return std::nullopt;

  RepetitionPlan plan;
  plan.n = n;
  plan.k = k;
  plan.delta_eff = delta_eff;
  if (tight) {
    plan.soundness_bound = std::exp(-n * binary_kl(static_cast<double>(k) / n, a));
    plan.completeness_bound = binom_range(n, 0, k - 1, b);
  } else {
    plan.soundness_bound = std::exp(-2.0 * n * delta_eff * delta_eff);
    plan.completeness_bound = std::exp(-2.0 * n * c_gap * c_gap);
  }
  if (plan.soundness_bound <= eps && plan.completeness_bound <= eps) return plan;
  return std::nullopt;
}

}  // namespace

RepetitionPlan plan_repetition(const ErrorParams& e, bool tight) {
  validate_params(e);
  double delta = (e.b - e.a) / 2.0;
  int n0 = 1;
  if (!tight)
    n0 = std::max(
        1, static_cast<int>(std::ceil(std::log(1.0 / e.eps) / (2.0 * delta * delta) -
                                      1e-9)));
  for (int n = n0; n < n0 + 10000000; ++n)
    if (auto plan = certify(n, e.a, e.b, e.eps, tight)) return *plan;
  throw ValidationError("repetition planning did not converge");
}

std::optional<RepetitionPlan> plan_with_shrinking_gap(
    const std::vector<ScheduleRow>& schedule, double eps) {
  if (schedule.empty()) throw ValidationError("empty schedule");
  if (!(0.0 < eps && eps < 1.0)) throw ValidationError("need 0 < eps < 1");
  int prev_n = 0;
  for (const auto& row : schedule) {
    if (row.n <= prev_n) throw ValidationError("schedule rows must increase in n");
    prev_n = row.n;
    if (!(0.0 <= row.a && row.a < row.b && row.b <= 1.0))
      throw ValidationError("schedule row needs 0 <= a < b <= 1");
    if (auto plan = certify(row.n, row.a, row.b, eps, false)) return plan;
  }
  return std::nullopt;
}

std::pair<double, double> monte_carlo_tail(int n, int k, double p, long trials,
                                           uint64_t seed) {
  if (n < 1 || k < 0 || k > n) throw ValidationError("need 0 <= k <= n, n >= 1");
  if (trials < 1) throw ValidationError("trials must be >= 1");
  check_prob(p, "p");
  Rng rng(seed);
  long hits = 0;
  for (long t = 0; t < trials; ++t) {
    int wins = 0;
    for (int i = 0; i < n; ++i)
      if (rng.uniform() < p) ++wins;
    if (wins >= k) ++hits;
  }
  double est = static_cast<double>(hits) / static_cast<double>(trials);
  double ci95 = 1.96 * std::sqrt(std::max(est * (1.0 - est), 0.0) /
                                 static_cast<double>(trials));
  return {est, ci95};
}

}  // namespace threshrep
