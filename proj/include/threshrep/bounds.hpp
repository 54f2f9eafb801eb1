/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace threshrep {

// Binary relative entropy D(gamma || delta) in nats, with 0 ln 0 = 0.
// Returns +infinity when delta is degenerate against gamma.
double binary_kl(double gamma, double delta);

// The pair (e^{-n D(gamma||delta)}, e^{-2n (gamma-delta)^2}); the first
// never exceeds the second. Requires delta <= gamma <= 1.
std::pair<double, double> ik_bound(int n, double gamma, double delta);

// e^{-2n (k/n - p)^2}, an upper bound on the optimal probability of
// winning at least k of n instances of a protocol with value p.
// Requires 1 <= k <= n and k/n > p.
double hedging_bound(int n, double p, int k);

// Pr[Bin(n, p) >= k], summed in log space.
double binomial_tail(int n, int k, double p);

// Soundness value a, completeness value b, target error eps.
struct ErrorParams {
  double a = 0.0;
  double b = 1.0;
  double eps = 0.5;
};

void validate_params(const ErrorParams& e);

struct RepetitionPlan {
  int n = 1;
  int k = 1;
  double soundness_bound = 0.0;
  double completeness_bound = 0.0;
  double delta_eff = 0.0;  // k/n - a
};

// Smallest n >= ln(1/eps)/(2 delta^2), delta = (b-a)/2, with k = ceil(n(a+b)/2)
// such that both Hoeffding certificates hold:
//   soundness:    e^{-2n (k/n - a)^2}      <= eps  (a dishonest prover wins
//                                                   >= k instances)
//   completeness: e^{-2n (b - (k-1)/n)^2}  <= eps  (an honest prover wins
//                                                   <= k-1 instances)
// With tight = true, certifies with the relative-entropy form and the exact
// binomial tail instead, scanning from n = 1.
RepetitionPlan plan_repetition(const ErrorParams& e, bool tight = false);

struct ScheduleRow {
  int n = 1;
  double a = 0.0;
  double b = 1.0;
};

// First row of the schedule whose (n, a, b) certifies both bounds <= eps,
// with k = ceil(n(a+b)/2); nullopt when no row certifies.
std::optional<RepetitionPlan> plan_with_shrinking_gap(
    const std::vector<ScheduleRow>& schedule, double eps);

// Seeded empirical estimate of Pr[Bin(n, p) >= k] with a 95% normal
// half-width.
std::pair<double, double> monte_carlo_tail(int n, int k, double p, long trials,
                                           uint64_t seed);

}  // namespace threshrep
