/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "threshrep/cli_app.hpp"

#include <cstdio>
#include <cstdlib>
#include <ostream>

#include <CLI11.hpp>

#include "threshrep/bounds.hpp"
#include "threshrep/json_io.hpp"
#include "threshrep/sdp.hpp"
#include "threshrep/seesaw.hpp"

namespace threshrep {

namespace {

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// Ordered key/value output rendered as a table, json, or csv.
class Report {
public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void add(const std::string& key, double v) { fields_.push_back({key, fmt9(v), v, true}); }
  void add(const std::string& key, long v) {
    fields_.push_back({key, std::to_string(v), 0.0, false});
  }
  void add(const std::string& key, int v) { add(key, static_cast<long>(v)); }
  void add(const std::string& key, const std::string& v) {
    fields_.push_back({key, v, 0.0, false});
  }

  void render(const std::string& format, std::ostream& out) const {
    if (format == "json") {
      ordered_json j;
      j["schema"] = "threshold-rep/1";
      j["command"] = command_;
      for (const auto& f : fields_) {
        if (f.numeric)
          j[f.key] = round_sig9(f.value);
        else
          j[f.key] = f.text;
      }
      out << j.dump(2) << "\n";
    } else if (format == "csv") {
      out << "key,value\n";
      for (const auto& f : fields_) out << f.key << "," << f.text << "\n";
    } else {
      for (const auto& f : fields_) out << f.key << " = " << f.text << "\n";
    }
  }

private:
  struct Field {
    std::string key;
    std::string text;
    double value = 0.0;
    bool numeric = false;
  };
  std::string command_;
  std::vector<Field> fields_;
};

void add_report(Report& rep, const ValidationReport& v) {
  for (const auto& item : v.items) {
    rep.add(item.name, item.residual);
    rep.add(item.name + ".pass", std::string(item.pass ? "true" : "false"));
  }
  rep.add("pass", std::string(v.pass() ? "true" : "false"));
}

void add_solution(Report& rep, const SdpSolution& sol) {
  rep.add("duality_gap", sol.gap);
  rep.add("primal_residual", sol.primal_residual);
  rep.add("dual_residual", sol.dual_residual);
  rep.add("iterations", sol.iterations);
  rep.add("status", to_string(sol.status));
}

double solved_value(const SdpSolution& sol) {
  if (sol.status == SdpStatus::infeasible)
    throw ValidationError("value SDP reported infeasible");
  double v = sol.primal_value;
  if (v < -1e-4 || v > 1.0 + 1e-4)
    throw ValidationError("solved value outside [0,1]");
  return std::clamp(v, 0.0, 1.0);
}

void add_plan(Report& rep, const RepetitionPlan& plan) {
  rep.add("n", plan.n);
  rep.add("k", plan.k);
  rep.add("soundness_bound", plan.soundness_bound);
  rep.add("completeness_bound", plan.completeness_bound);
  rep.add("delta_eff", plan.delta_eff);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"single-prover threshold repetition toolkit"};
  app.require_subcommand(1);

  std::string format = "table";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));

  SolverOptions opts;
  std::string path, demo_name, out_path, schedule_path;
  int n = 1, k = -1;
  double gamma = -1.0, delta = -1.0, p = -1.0;
  double plan_a = -1.0, plan_b = -1.0, eps = 0.0;
  bool tight = false;
  long trials = 100000;
  uint64_t mc_seed = 1;

  auto add_solver_flags = [&](CLI::App* cmd) {
    cmd->add_option("--gap-tol", opts.gap_tol, "duality gap tolerance");
    cmd->add_option("--max-iter", opts.max_iter, "solver iteration limit");
    cmd->add_option("--seed", opts.seed, "see-saw seed");
    cmd->add_option("--restarts", opts.restarts, "see-saw restarts");
  };

  auto* c_validate = app.add_subcommand("validate", "check a protocol file");
  c_validate->add_option("file", path, "protocol file")->required();

  auto* c_value = app.add_subcommand("value", "optimal single-instance value");
  c_value->add_option("file", path, "protocol file")->required();
  add_solver_flags(c_value);

  auto* c_tvalue = app.add_subcommand("threshold-value", "optimal k-of-n value");
  c_tvalue->add_option("file", path, "protocol file")->required();
  c_tvalue->add_option("--n", n, "instances")->required();
  c_tvalue->add_option("--k", k, "threshold")->required();
  add_solver_flags(c_tvalue);

  auto* c_bound = app.add_subcommand("bound", "closed-form bounds");
  c_bound->add_option("--n", n, "instances")->required();
  c_bound->add_option("--gamma", gamma, "empirical rate");
  c_bound->add_option("--delta", delta, "per-instance bound");
  c_bound->add_option("--k", k, "threshold");
  c_bound->add_option("--p", p, "per-instance value");

  auto* c_plan = app.add_subcommand("plan", "repetition planning");
  c_plan->add_option("--a", plan_a, "soundness value");
  c_plan->add_option("--b", plan_b, "completeness value");
  c_plan->add_option("--eps", eps, "target error")->required();
  c_plan->add_flag("--tight", tight, "certify with relative entropy and exact tails");
  c_plan->add_option("--schedule", schedule_path, "csv schedule with header n,a,b");

  auto* c_demo = app.add_subcommand("demo", "write and analyze a built-in protocol");
  c_demo->add_option("name", demo_name, "hedging, coin, or always-accept")
      ->required()
      ->check(CLI::IsMember({"hedging", "coin", "always-accept"}));
  c_demo->add_option("--out", out_path, "protocol file to write");
  add_solver_flags(c_demo);

  auto* c_mc = app.add_subcommand("montecarlo", "empirical threshold tail");
  c_mc->add_option("--n", n, "instances")->required();
  c_mc->add_option("--k", k, "threshold")->required();
  c_mc->add_option("--p", p, "win probability")->required();
  c_mc->add_option("--trials", trials, "trial count");
  c_mc->add_option("--seed", mc_seed, "generator seed");

  // Let the global --format appear after the subcommand name.
  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  std::vector<const char*> argv = {"threshold-rep"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (const char* cap = std::getenv("THRESHOLD_REP_MAX_DIM")) {
      char* end = nullptr;
      long v = std::strtol(cap, &end, 10);
      if (end == cap || *end != '\0' || v < 1)
        throw ParseError("THRESHOLD_REP_MAX_DIM must be a positive integer");
      set_max_total_dim(static_cast<int>(v));
    }

    if (app.got_subcommand(c_validate)) {
      ProtocolSpec prot = load_protocol(path);
      ValidationReport v = validate(prot);
      Report rep("validate");
      add_report(rep, v);
      rep.render(format, out);
      return v.pass() ? 0 : 1;
    }

    if (app.got_subcommand(c_value)) {
      ProtocolSpec prot = load_protocol(path);
      SdpSolution sol = solve_value_sdp(compile_winning_operator(prot), opts);
      Report rep("value");
      rep.add("optimal_value", solved_value(sol));
      rep.add("see_saw_lower_bound",
              see_saw_lower_bound(prot, opts.restarts, opts.seed));
      add_solution(rep, sol);
      rep.render(format, out);
      return 0;
    }

    if (app.got_subcommand(c_tvalue)) {
      ProtocolSpec prot = load_protocol(path);
      ThresholdTask task{prot, n, k};
      auto [compiled, q] = compile_threshold(task);
      SdpSolution sol = solve_value_sdp(q, opts);
      double value = solved_value(sol);
      Report rep("threshold-value");
      rep.add("n", n);
      rep.add("k", k);
      rep.add("threshold_value", value);
      rep.add("see_saw_lower_bound",
              see_saw_lower_bound(compiled, opts.restarts, opts.seed));
      double single = solved_value(solve_value_sdp(compile_winning_operator(prot), opts));
      rep.add("single_value", single);
      if (k >= 1 && static_cast<double>(k) / n > single)
        rep.add("hedging_bound", hedging_bound(n, single, k));
      else
        rep.add("hedging_bound_note", std::string("k/n <= single value; bound vacuous"));
      add_solution(rep, sol);
      rep.render(format, out);
      return 0;
    }

    if (app.got_subcommand(c_bound)) {
      Report rep("bound");
      rep.add("n", n);
      if (gamma >= 0.0 || delta >= 0.0) {
        if (gamma < 0.0 || delta < 0.0)
          throw ParseError("bound needs both --gamma and --delta");
        auto [kl_form, hoeffding_form] = ik_bound(n, gamma, delta);
        rep.add("gamma", gamma);
        rep.add("delta", delta);
        rep.add("binary_kl", binary_kl(gamma, delta));
        rep.add("kl_form", kl_form);
        rep.add("hoeffding_form", hoeffding_form);
      } else if (k >= 0 && p >= 0.0) {
        rep.add("k", k);
        rep.add("p", p);
        rep.add("hedging_bound", hedging_bound(n, p, k));
      } else {
        throw ParseError("bound needs --gamma/--delta or --k/--p");
      }
      rep.render(format, out);
      return 0;
    }

    if (app.got_subcommand(c_plan)) {
      Report rep("plan");
      if (!schedule_path.empty()) {
        auto plan = plan_with_shrinking_gap(load_schedule_csv(schedule_path), eps);
        if (!plan) {
          err << "no schedule row certifies eps = " << fmt9(eps) << "\n";
          return 1;
        }
        rep.add("eps", eps);
        add_plan(rep, *plan);
      } else {
        if (plan_a < 0.0 || plan_b < 0.0)
          throw ParseError("plan needs --a/--b or --schedule");
        ErrorParams params{plan_a, plan_b, eps};
        rep.add("a", plan_a);
        rep.add("b", plan_b);
        rep.add("eps", eps);
        rep.add("mode", std::string(tight ? "tight" : "hoeffding"));
        add_plan(rep, plan_repetition(params, tight));
      }
      rep.render(format, out);
      return 0;
    }

    if (app.got_subcommand(c_demo)) {
      ProtocolSpec prot;
      if (demo_name == "hedging")
        prot = builtin_hedging_protocol();
      else if (demo_name == "coin")
        prot = builtin_coin_protocol();
      else
        prot = builtin_always_accept_protocol();
      if (out_path.empty()) out_path = demo_name + ".protocol.json";
      save_protocol(prot, out_path);

      Report rep("demo");
      rep.add("name", demo_name);
      rep.add("file", out_path);
      double single = solved_value(solve_value_sdp(compile_winning_operator(prot), opts));
      rep.add("single_value", single);
      auto tvalue = [&](int tn, int tk) {
        return solved_value(solve_value_sdp(
            compile_threshold(ThresholdTask{prot, tn, tk}).second, opts));
      };
      if (demo_name == "hedging") {
        rep.add("pair_k1_value", tvalue(2, 1));
        rep.add("independent_baseline", 1.0 - (1.0 - single) * (1.0 - single));
        rep.add("hedging_bound_note",
                std::string("k/n = 1/2 below single value; bound vacuous"));
      } else if (demo_name == "coin") {
        rep.add("pair_k2_value", tvalue(2, 2));
      } else {
        rep.add("pair_k1_value", tvalue(2, 1));
        rep.add("pair_k2_value", tvalue(2, 2));
      }
      rep.render(format, out);
      return 0;
    }

    if (app.got_subcommand(c_mc)) {
      auto [estimate, ci95] = monte_carlo_tail(n, k, p, trials, mc_seed);
      Report rep("montecarlo");
      rep.add("n", n);
      rep.add("k", k);
      rep.add("p", p);
      rep.add("trials", trials);
      rep.add("seed", static_cast<long>(mc_seed));
      rep.add("estimate", estimate);
      rep.add("ci95", ci95);
      rep.add("exact_tail", binomial_tail(n, k, p));
      if (static_cast<double>(k) / n >= p) {
        auto [kl_form, hoeffding_form] = ik_bound(n, static_cast<double>(k) / n, p);
        rep.add("kl_form", kl_form);
        rep.add("hoeffding_form", hoeffding_form);
      }
      rep.render(format, out);
      return 0;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceededError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace threshrep
