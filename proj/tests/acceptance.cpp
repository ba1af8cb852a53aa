// Acceptance run: one PASS/FAIL line per criterion, from the CLI verify
// command. Exit status is nonzero when a criterion fails outside the
// documented deviations listed below.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "json.hpp"

using nlohmann::json;

namespace {

const std::uint64_t kSeed = 20240611;

// Invariants known to fail for a reason recorded in the decisions ledger:
// the exact second coefficient of F gives a relative deviation of about
// 2 m0 for dF/dmu, not m0.
const std::set<std::pair<std::string, std::string>> kDocumented = {
    {"series", "dF_dmu_deviation_over_m0"}};

struct Criterion {
  int number;
  const char* suite;
  const char* title;
  double budget_seconds;
};

const Criterion kCriteria[] = {
    {1, "bounds", "population bounds m0|Omega| <= F <= 3 m0|Omega|", 300},
    {2, "solver", "solve vs march and second-order grid convergence", 300},
    {3, "strict", "strict bounds 0 < theta < 1", 300},
    {4, "energy", "first-integral conservation in m-constant cells", 300},
    {5, "surgery", "surgery functionals and resource improvement", 600},
    {6, "advantage", "advantage function edges, bounds and small-b law", 600},
    {7, "superlinearity", "superlinearity of H for small b/l", 600},
    {8, "optimal", "concentrated boundary block is optimal", 600},
    {9, "series", "perturbation series and its partial derivatives", 60},
};

std::string read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string brief(const json& v) {
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v.get<double>());
    return buf;
  }
  return v.dump();
}

}  // namespace

int main() {
  const std::string cli = LOGOPT_CLI;
  const std::string dir = LOGOPT_TEST_TMP;
  int unexpected = 0, failed = 0;

  for (const Criterion& c : kCriteria) {
    const std::string out = dir + "/acceptance_" + c.suite + ".json";
    const auto t0 = std::chrono::steady_clock::now();
    const int code = run(cli + " verify --seed " + std::to_string(kSeed) + " --suite " + c.suite +
                         " --out " + out + " > /dev/null");
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json suite;
    try {
      suite = json::parse(read(out)).at("suites").at(0);
    } catch (const std::exception&) {
      std::cout << "FAIL " << c.number << " " << c.title << ": no report (exit " << code << ")\n";
      ++failed;
      ++unexpected;
      continue;
    }
    bool ok = suite.at("passed").get<bool>() && secs <= c.budget_seconds;
    std::ostringstream note;
    bool only_documented = secs <= c.budget_seconds;
    for (const auto& inv : suite.at("invariants")) {
      if (inv.at("passed").get<bool>()) continue;
      note << " failed " << inv.at("name").get<std::string>() << " measured "
           << brief(inv.at("measured")) << " threshold " << brief(inv.at("threshold")) << ";";
      if (!kDocumented.count({c.suite, inv.at("name").get<std::string>()})) only_documented = false;
    }
    std::cout << (ok ? "PASS " : "FAIL ") << c.number << " " << c.title << " [" << std::fixed;
    std::cout.precision(1);
    std::cout << secs << " s]";
    std::cout.unsetf(std::ios::fixed);
    std::cout.precision(6);
    if (!ok) {
      std::cout << note.str();
      if (only_documented) std::cout << " documented deviation";
    }
    if (std::string(c.suite) == "superlinearity")
      std::cout << " region " << suite.at("details").at("positive_region").dump() << " min margin "
                << brief(suite.at("invariants").at(0).at("measured"));
    std::cout << "\n";
    if (!ok) {
      ++failed;
      if (!only_documented) ++unexpected;
    }
  }

  const std::string a = dir + "/acceptance_full_1.json", b = dir + "/acceptance_full_2.json";
  const std::string base = cli + " verify --seed " + std::to_string(kSeed) + " --out ";
  run(base + a + " > /dev/null");
  run(base + b + " > /dev/null");
  const std::string ra = read(a), rb = read(b);
  const bool same = !ra.empty() && ra == rb;
  std::cout << (same ? "PASS " : "FAIL ") << "10 verify twice with the same seed gives byte-identical reports ("
            << ra.size() << " bytes)\n";
  if (!same) {
    ++failed;
    ++unexpected;
  }

  std::cout << (10 - failed) << "/10 criteria pass";
  if (failed > unexpected) std::cout << "; " << failed - unexpected << " documented deviation";
  std::cout << "\n";
  return unexpected == 0 ? 0 : 1;
}
