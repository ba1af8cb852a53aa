#include <chrono>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "logopt/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "logopt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = logopt::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) { return std::string(LOGOPT_TEST_TMP) + "/" + name; }

std::string write(const std::string& name, const std::string& text) {
  const std::string path = scratch(name);
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

std::string read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string& header) {
  std::istringstream in(text);
  std::getline(in, header);
  std::vector<std::vector<double>> rows;
  for (std::string line; std::getline(in, line);) {
    std::vector<double> row;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

void check_error_line(const Run& r, const std::string& code) {
  REQUIRE_FALSE(r.err.empty());
  CHECK(r.err.find('\n') == r.err.size() - 1);
  const json e = json::parse(r.err);
  CHECK(e["error"] == code);
  CHECK(e["exit_code"] == r.code);
}

}  // namespace

TEST_CASE("solve on a constant resource") {
  const auto cfg = write("const.json", R"({"resource": {"domain": [0, 1], "constant": 0.25}})");
  const Run r = run({"solve", "--config", cfg});
  REQUIRE(r.code == 0);
  const json s = json::parse(r.out);
  CHECK(s["F"].get<double>() == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(s["extrema"].empty());
}

TEST_CASE("solve matches the golden solution") {
  const auto cfg =
      write("half.json", R"({"resource": {"domain": [0, 1], "intervals": [[0, 0.5]]}, "mu": 1})");
  const auto csv = scratch("half.csv");
  const Run r = run({"solve", "--config", cfg, "--out", csv, "--grid", "512"});
  REQUIRE(r.code == 0);
  std::string h1, h2;
  const auto got = parse_csv(read(csv), h1);
  const auto want = parse_csv(read(std::string(LOGOPT_GOLDEN_DIR) + "/solve_half.csv"), h2);
  CHECK(h1 == h2);
  REQUIRE(got.size() == want.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i)
    for (std::size_t k = 0; k < got[i].size(); ++k)
      worst = std::max(worst, std::fabs(got[i][k] - want[i][k]));
  CHECK(worst <= 1e-12);
  CHECK(read(csv).find('\r') == std::string::npos);
}

TEST_CASE("config errors exit 1 and name the field") {
  const auto bad = write("bad.json", R"({"resource": {"domain": [0, 1], "intervals": [[0, "x"]]}})");
  const Run r = run({"solve", "--config", bad});
  CHECK(r.code == 1);
  check_error_line(r, "Config");
  CHECK(r.err.find("intervals[0]") != std::string::npos);

  const auto broken = write("broken.json", R"({"resource": )");
  const Run b = run({"solve", "--config", broken});
  CHECK(b.code == 1);
  check_error_line(b, "Config");

  const auto mu = write("mu.json", R"({"resource": {"domain": [0, 1], "intervals": [[0, 0.5]]}, "mu": "x"})");
  const Run m = run({"solve", "--config", mu});
  CHECK(m.code == 1);
  CHECK(m.err.find("'mu'") != std::string::npos);

  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"solve", "--config", scratch("missing.json")}).code == 1);
}

TEST_CASE("numeric failures exit 2") {
  const auto dec = write("dec.json", R"({"resource": {"domain": [0, 4], "intervals": [[1.5, 2.5]]}})");
  const Run d = run({"improve", "--config", dec, "--grid", "512"});
  CHECK(d.code == 2);
  check_error_line(d, "AlreadyDecomposable");
}

TEST_CASE("march agrees with solve") {
  const auto cfg =
      write("m.json", R"({"resource": {"domain": [0, 2], "intervals": [[0.4, 0.9]]}, "grid_n": 256})");
  const json a = json::parse(run({"solve", "--config", cfg}).out);
  const Run r = run({"march", "--config", cfg});
  REQUIRE(r.code == 0);
  const json b = json::parse(r.out);
  CHECK(std::fabs(a["F"].get<double>() - b["F"].get<double>()) <= 1e-7);
}

TEST_CASE("surface smoke run") {
  const auto cfg = write("surf.json", R"({"nl": 3, "nr": 3, "l_min": 0.5, "l_max": 4})");
  const auto t0 = std::chrono::steady_clock::now();
  const Run a = run({"surface", "--config", cfg});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  REQUIRE(a.code == 0);
  CHECK(secs < 10.0);
  std::string header;
  const auto rows = parse_csv(a.out, header);
  CHECK(header == "l,b_over_l,H");
  REQUIRE(rows.size() == 9);
  for (const auto& row : rows)
    if (row[1] == 0.0 || row[1] == 1.0) CHECK(row[2] == 0.0);
  CHECK(run({"surface", "--config", cfg}).out == a.out);
}

TEST_CASE("series output") {
  const Run r = run({"series", "--m0", "0.05", "--mu", "10"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  for (const char* key : {"m0", "mu", "K", "F_series", "F_direct", "per_order"}) CHECK(j.contains(key));
  CHECK(j["per_order"].size() == 8);
  CHECK(std::fabs(j["F_series"].get<double>() - j["F_direct"].get<double>()) <= 1e-6);
}

TEST_CASE("improve and optimize outputs") {
  const auto cfg = write("frag.json", R"({"resource": {"domain": [0, 4], "intervals": [[1, 1.3], [1.6, 4]]}})");
  const Run r = run({"improve", "--config", cfg, "--grid", "2048"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["report"]["mass_after"].get<double>() < j["report"]["mass_before"].get<double>());
  CHECK(j["m_hat"]["segments"].size() >= 3);

  const auto ocfg = write("opt.json", R"({"simplex_grid": 8, "grid_n": 256})");
  const Run o = run({"optimize", "--config", ocfg, "--m0", "0.05"});
  REQUIRE(o.code == 0);
  const json oj = json::parse(o.out);
  CHECK(oj["single_block_wins"] == true);
  CHECK(oj["best"][0]["blocks"].size() == 1);
}

TEST_CASE("verify runs a single suite and is deterministic") {
  const auto out1 = scratch("v1.json"), out2 = scratch("v2.json");
  const Run a = run({"verify", "--suite", "optimal", "--seed", "3", "--out", out1});
  const Run b = run({"verify", "--suite", "optimal", "--seed", "3", "--out", out2});
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  CHECK(read(out1) == read(out2));
  const json j = json::parse(read(out1));
  REQUIRE(j["suites"].size() == 1);
  CHECK(j["suites"][0]["name"] == "optimal");
  CHECK(j["seed"] == 3);
}

TEST_CASE("injected fault gives a controlled failure") {
  const auto cfg = write("fault.json", R"({"tolerance_scale": 1e-6})");
  const Run r = run({"verify", "--config", cfg, "--suite", "surgery"});
  CHECK(r.code == 3);
  const json j = json::parse(r.out);
  CHECK(j["passed"] == false);
  bool named = false;
  for (const auto& inv : j["suites"][0]["invariants"])
    if (inv["passed"] == false && inv["name"] == "population_change") named = true;
  CHECK(named);
  CHECK(run({"verify", "--suite", "nope"}).code == 1);
}
