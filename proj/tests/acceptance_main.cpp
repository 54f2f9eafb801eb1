/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 *
 * End-to-end acceptance suite. Each criterion prints one pass/fail line;
 * the exit code is the number of failed criteria.
 */

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "threshrep/bounds.hpp"
#include "threshrep/cli_app.hpp"
#include "threshrep/sdp.hpp"
#include "threshrep/seesaw.hpp"
#include "threshrep/strategy.hpp"

using namespace threshrep;
using namespace threshrep::testutil;

namespace {

int failures = 0;
std::vector<SdpSolution> certificates;  // collected for criterion 9

void report(int id, const char* what, bool ok, const std::string& detail = "") {
  std::printf("criterion %d [%s]: %s%s%s\n", id, what, ok ? "pass" : "FAIL",
              detail.empty() ? "" : " ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double solved(const ThresholdTask& t) {
  SdpSolution sol = solve_value_sdp(compile_threshold(t).second);
  certificates.push_back(sol);
  return std::min(1.0, std::max(0.0, sol.primal_value));
}

// 1. Simulator agreement: for random protocols and provers, the direct
// interaction probability matches <Q1, X> for the compiled strategy.
void criterion1() {
  Rng rng(101);
  double worst = 0.0;
  int pairs = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int r = 1 + (trial % 2);
    ProtocolSpec p = random_protocol(rng, r, 3);
    WinningOperator q = compile_winning_operator(p);
    for (int j = 0; j < 2; ++j) {
      ProverProgram b = random_prover(rng, p);
      double direct = simulate(p, b);
      double via_q = strategy_value(q, strategy_from_program(b, p));
      worst = std::max(worst, std::abs(direct - via_q));
      ++pairs;
    }
  }
  std::ostringstream d;
  d << pairs << " pairs, worst deviation " << worst;
  report(1, "simulator vs compiled operator", pairs >= 200 && worst <= 1e-9, d.str());
}

// 2. Win-all multiplicativity: value(n-of-n) = value^n.
void criterion2() {
  Rng rng(202);
  double worst2 = 0.0, worst3 = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    ProtocolSpec p = random_protocol(rng, 1, 2);
    double v1 = solved({p, 1, 1});
    double v22 = solved({p, 2, 2});
    worst2 = std::max(worst2, std::abs(v22 - v1 * v1));
    if (trial < 5) {
      double v33 = solved({p, 3, 3});
      worst3 = std::max(worst3, std::abs(v33 - v1 * v1 * v1));
    }
  }
  std::ostringstream d;
  d << "2-fold dev " << worst2 << ", 3-fold dev " << worst3;
  report(2, "win-all product rule", worst2 <= 1e-5 && worst3 <= 1e-4, d.str());
}

// 3. Hedging demo: single value cos^2(pi/8) certified from both sides,
// perfect hedging at (n=2, k=1), product value at (n=2, k=2).
void criterion3() {
  const double cos2 = std::cos(M_PI / 8.0) * std::cos(M_PI / 8.0);
  ProtocolSpec p = builtin_hedging_protocol();
  double v1 = solved({p, 1, 1});
  double lower = see_saw_lower_bound(p, 10, 7);
  double v21 = solved({p, 2, 1});
  double v22 = solved({p, 2, 2});
  bool ok = std::abs(v1 - cos2) <= 1e-5 && lower >= cos2 - 1e-5 &&
            lower <= v1 + 1e-6 && 1.0 - v21 <= 1e-4 &&
            std::abs(v22 - cos2 * cos2) <= 1e-5;
  std::ostringstream d;
  d << "value " << v1 << ", see-saw " << lower << ", (2,1) " << v21 << ", (2,2) "
    << v22;
  report(3, "hedging demo", ok, d.str());
}

// 4. Concentration dominance on solved tasks with k/n > p: the optimum sits
// between the independent-play tail and the Hoeffding bound.
void criterion4() {
  struct Case {
    ProtocolSpec p;
    int n, k;
  };
  std::vector<Case> cases;
  ProtocolSpec coin = builtin_coin_protocol();
  cases.push_back({coin, 2, 2});
  cases.push_back({coin, 3, 2});
  cases.push_back({coin, 3, 3});
  cases.push_back({builtin_hedging_protocol(), 3, 3});
  Rng rng(404);
  while (cases.size() < 7) {
    ProtocolSpec p = random_protocol(rng, 1, 2);
    cases.push_back({p, 2, 2});
  }
  bool ok = true;
  int used = 0;
  for (const auto& c : cases) {
    double p1 = solved({c.p, 1, 1});
    if (!(static_cast<double>(c.k) / c.n > p1)) continue;
    ++used;
    double opt = solved({c.p, c.n, c.k});
    double upper = hedging_bound(c.n, p1, c.k);
    double tail = binomial_tail(c.n, c.k, p1);
    if (!(opt <= upper + 1e-5) || !(tail <= opt + 1e-6)) ok = false;
  }
  std::ostringstream d;
  d << used << " tasks with k/n above the single value";
  report(4, "tail <= optimum <= exp bound", ok && used >= 4, d.str());
}

// 5. Analytic grid: the relative-entropy form never exceeds the Hoeffding
// form, and the exact binomial tail never exceeds either.
void criterion5() {
  int violations = 0, points = 0;
  for (int n : {1, 10, 100})
    for (double delta = 0.05; delta < 0.96; delta += 0.05)
      for (double gamma = delta; gamma <= 1.0 + 1e-12; gamma += 0.01) {
        double g = std::min(gamma, 1.0);
        auto [kl_form, hoeffding_form] = ik_bound(n, g, delta);
        int k = static_cast<int>(std::ceil(g * n - 1e-9));
        ++points;
        if (kl_form > hoeffding_form + 1e-15) ++violations;
        if (binomial_tail(n, k, delta) > kl_form + 1e-12) ++violations;
      }
  std::ostringstream d;
  d << points << " grid points, " << violations << " violations";
  report(5, "bound dominance grid", violations == 0, d.str());
}

// 6. Repetition planner: the (1/3, 2/3, 0.01) worked example and
// logarithmic scaling of n in the target error.
void criterion6() {
  RepetitionPlan plan = plan_repetition({1.0 / 3.0, 2.0 / 3.0, 0.01});
  bool ok = plan.n == 83 && plan.k == 42 && plan.soundness_bound <= 0.01 &&
            plan.completeness_bound <= 0.01;
  int prev = 0;
  for (int e = 1; e <= 8; ++e) {
    double eps = std::pow(10.0, -e);
    RepetitionPlan pe = plan_repetition({1.0 / 3.0, 2.0 / 3.0, eps});
    if (pe.n < prev || pe.n / std::log(1.0 / eps) > 20.0) ok = false;
    prev = pe.n;
  }
  std::ostringstream d;
  d << "n " << plan.n << ", k " << plan.k << ", bounds " << plan.soundness_bound
    << " / " << plan.completeness_bound;
  report(6, "repetition planner", ok, d.str());
}

// 7. Monte Carlo agreement with the exact tail and with the
// relative-entropy bound across a parameter sweep.
void criterion7() {
  const double exact = binomial_tail(100, 60, 0.5);
  auto [est, ci] = monte_carlo_tail(100, 60, 0.5, 1000000, 11);
  double sd = ci / 1.96;
  bool ok = std::abs(est - 0.0284440) <= 3.0 * sd + 1e-4 &&
            std::abs(est - exact) <= 3.0 * sd;
  const long trials = 20000;
  for (int i = 0; i < 20; ++i) {
    double gamma = 0.30 + 0.03 * i;
    int n = 50, k = static_cast<int>(std::ceil(gamma * n - 1e-9));
    auto [e2, c2] = monte_carlo_tail(n, k, 0.3, trials, 100 + i);
    double kl_form = ik_bound(n, std::min(1.0, gamma), 0.3).first;
    if (e2 > kl_form + 3.0 * c2 / 1.96 + 1e-9) ok = false;
  }
  std::ostringstream d;
  d << "estimate " << est << " +/- " << ci << ", exact " << exact;
  report(7, "monte carlo tails", ok, d.str());
}

// 8. Determinism: identical CLI invocations produce byte-identical JSON.
void criterion8() {
  auto invoke = [](const std::vector<std::string>& args, int& code) {
    std::ostringstream out, err;
    code = run_cli(args, out, err);
    return out.str();
  };
  int c1 = 0, c2 = 0, c3 = 0, c4 = 0;
  std::vector<std::string> demo = {"demo", "hedging", "--out",
                                   "acceptance_hedging.json", "--format", "json"};
  std::string a = invoke(demo, c1), b = invoke(demo, c2);
  std::vector<std::string> value = {"value", "acceptance_hedging.json", "--format",
                                    "json"};
  std::string va = invoke(value, c3), vb = invoke(value, c4);
  bool ok = c1 == 0 && c2 == 0 && c3 == 0 && c4 == 0 && a == b && va == vb;
  report(8, "deterministic cli output", ok);
}

// 9. Every SDP solve above carries optimality certificates.
void criterion9() {
  double worst_gap = 0.0, worst_res = 0.0;
  bool ok = !certificates.empty();
  for (const auto& sol : certificates) {
    worst_gap = std::max(worst_gap, std::abs(sol.gap));
    worst_res = std::max(worst_res,
                         std::max(sol.primal_residual, sol.dual_residual));
    if (sol.status != SdpStatus::optimal) ok = false;
  }
  ok = ok && worst_gap <= 1e-5 && worst_res <= 1e-7;
  std::ostringstream d;
  d << certificates.size() << " solves, worst gap " << worst_gap
    << ", worst residual " << worst_res;
  report(9, "sdp certificates", ok, d.str());
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  std::printf("%s (%d criteria failed)\n", failures == 0 ? "ACCEPTED" : "REJECTED",
              failures);
  return failures;
}
