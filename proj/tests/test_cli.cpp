/**
 * This code is part of threshold-rep.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "threshrep/cli_app.hpp"
#include "threshrep/json_io.hpp"

using namespace threshrep;

namespace {

struct CliResult {
  int code = 0;
  std::string out, err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult res;
  res.code = run_cli(args, out, err);
  res.out = out.str();
  res.err = err.str();
  return res;
}

std::string tmp_path(const std::string& name) {
  std::filesystem::create_directories("cli_tmp");
  return "cli_tmp/" + name;
}

}  // namespace

TEST_CASE("demo writes a loadable protocol file") {
  std::string file = tmp_path("aa.json");
  CliResult res = run({"demo", "always-accept", "--out", file, "--format", "json"});
  REQUIRE(res.code == 0);
  auto j = ordered_json::parse(res.out);
  CHECK(j.at("schema") == "threshold-rep/1");
  CHECK(std::abs(j.at("single_value").get<double>() - 1.0) < 1e-5);
  CHECK(std::abs(j.at("pair_k1_value").get<double>() - 1.0) < 1e-5);
  CHECK(validate(load_protocol(file)).pass());
  CHECK(run({"validate", file}).code == 0);
}

TEST_CASE("demo hedging headline numbers") {
  std::string file = tmp_path("hedging.json");
  CliResult res = run({"demo", "hedging", "--out", file, "--format", "json"});
  REQUIRE(res.code == 0);
  auto j = ordered_json::parse(res.out);
  CHECK(std::abs(j.at("single_value").get<double>() - 0.853553391) < 1e-5);
  CHECK(std::abs(j.at("pair_k1_value").get<double>() - 1.0) < 1e-4);
  CHECK(std::abs(j.at("independent_baseline").get<double>() - 0.978553391) < 1e-5);
}

TEST_CASE("validate failure and parse failure exit codes") {
  std::string good = tmp_path("coin.json");
  REQUIRE(run({"demo", "coin", "--out", good}).code == 0);

  // Corrupt the trace of rho.
  std::ifstream in(good);
  auto j = ordered_json::parse(in);
  j["rho"]["data"][0][0][0] = 2.0;
  std::string bad = tmp_path("bad_trace.json");
  {
    std::ofstream out(bad);
    out << j.dump();
  }
  CliResult res = run({"validate", bad, "--format", "json"});
  CHECK(res.code == 1);
  auto rep = ordered_json::parse(res.out);
  CHECK(rep.at("pass") == "false");

  std::string truncated = tmp_path("truncated.json");
  {
    std::ofstream out(truncated);
    out << "{\"version\": 1, \"r\":";
  }
  CHECK(run({"validate", truncated}).code == 2);

  j["extra_field"] = 3;
  j["rho"]["data"][0][0][0] = 1.0;
  std::string unknown = tmp_path("unknown.json");
  {
    std::ofstream out(unknown);
    out << j.dump();
  }
  CHECK(run({"validate", unknown}).code == 2);

  CHECK(run({"validate", tmp_path("missing.json")}).code == 2);
}

TEST_CASE("value and threshold-value commands") {
  std::string coin = tmp_path("coin.json");
  REQUIRE(run({"demo", "coin", "--out", coin}).code == 0);
  CliResult res = run({"value", coin, "--format", "json"});
  REQUIRE(res.code == 0);
  auto j = ordered_json::parse(res.out);
  CHECK(std::abs(j.at("optimal_value").get<double>() - 0.5) < 1e-5);
  CHECK(j.at("see_saw_lower_bound").get<double>() <=
        j.at("optimal_value").get<double>() + 1e-6);
  CHECK(j.at("status") == "optimal");

  std::string hedging = tmp_path("hedging.json");
  REQUIRE(run({"demo", "hedging", "--out", hedging}).code == 0);
  CliResult tv = run({"threshold-value", hedging, "--n", "2", "--k", "2", "--format",
                      "json"});
  REQUIRE(tv.code == 0);
  auto tj = ordered_json::parse(tv.out);
  CHECK(std::abs(tj.at("threshold_value").get<double>() - 0.728553391) < 1e-5);
  CHECK(tj.contains("hedging_bound"));
  CHECK(tj.at("threshold_value").get<double>() <=
        tj.at("hedging_bound").get<double>() + 1e-5);
}

TEST_CASE("bound command") {
  CliResult res = run({"bound", "--n", "100", "--gamma", "0.6", "--delta", "0.5",
                       "--format", "json"});
  REQUIRE(res.code == 0);
  auto j = ordered_json::parse(res.out);
  CHECK(std::abs(j.at("hoeffding_form").get<double>() - 0.135335283) < 1e-8);
  CHECK(j.at("kl_form").get<double>() <= j.at("hoeffding_form").get<double>());

  CliResult hb = run({"bound", "--n", "100", "--k", "60", "--p", "0.5", "--format",
                      "json"});
  REQUIRE(hb.code == 0);
  CHECK(std::abs(ordered_json::parse(hb.out).at("hedging_bound").get<double>() -
                 0.135335283) < 1e-8);

  CHECK(run({"bound", "--n", "10", "--gamma", "0.4", "--delta", "0.5"}).code == 1);
  CHECK(run({"bound", "--n", "10"}).code == 2);
}

TEST_CASE("plan command") {
  CliResult res = run({"plan", "--a", "0.3333333", "--b", "0.6666667", "--eps", "0.01",
                       "--format", "json"});
  REQUIRE(res.code == 0);
  auto j = ordered_json::parse(res.out);
  CHECK(j.at("n") == "83");
  CHECK(j.at("k") == "42");

  CliResult tight = run({"plan", "--a", "0.3333333", "--b", "0.6666667", "--eps",
                         "0.01", "--tight", "--format", "json"});
  REQUIRE(tight.code == 0);
  CHECK(std::stoi(ordered_json::parse(tight.out).at("n").get<std::string>()) <= 83);

  std::string sched = tmp_path("sched.csv");
  {
    std::ofstream out(sched);
    out << "n,a,b\n";
    for (int n = 1; n <= 50; ++n)
      out << n << "," << 0.5 - 0.5 / n << "," << 0.5 + 0.5 / n << "\n";
  }
  CHECK(run({"plan", "--schedule", sched, "--eps", "0.1"}).code == 1);
  CHECK(run({"plan", "--eps", "0.1"}).code == 2);
}

TEST_CASE("montecarlo command is reproducible") {
  std::vector<std::string> args = {"montecarlo", "--n",      "2",     "--k",
                                   "1",          "--p",      "0.5",   "--trials",
                                   "20000",      "--seed",   "7",     "--format",
                                   "json"};
  CliResult a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto j = ordered_json::parse(a.out);
  double est = j.at("estimate").get<double>(), ci = j.at("ci95").get<double>();
  CHECK(std::abs(est - 0.75) < 3.0 * ci + 1e-9);
  CHECK(std::abs(j.at("exact_tail").get<double>() - 0.75) < 1e-12);
}

TEST_CASE("json output is byte-identical across runs") {
  std::string file = tmp_path("hedging_det.json");
  std::vector<std::string> args = {"demo", "hedging", "--out", file, "--format", "json"};
  CliResult a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("dimension cap override via environment") {
  std::string hedging = tmp_path("hedging_cap.json");
  REQUIRE(run({"demo", "hedging", "--out", hedging}).code == 0);
  setenv("THRESHOLD_REP_MAX_DIM", "8", 1);
  CHECK(run({"threshold-value", hedging, "--n", "2", "--k", "1"}).code == 3);
  setenv("THRESHOLD_REP_MAX_DIM", "frog", 1);
  CHECK(run({"validate", hedging}).code == 2);
  unsetenv("THRESHOLD_REP_MAX_DIM");
  set_max_total_dim(4096);
  CHECK(run({"threshold-value", hedging, "--n", "2", "--k", "1"}).code == 0);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"value"}).code == 2);
}
