#include <chrono>
#include <cstdio>
#include <iostream>

#include "dgcat/suites.hpp"

namespace {

struct Criterion {
  int number;
  const char* title;
  const char* suite;
  double budget_seconds;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "lens dga validity", "lens-dga", 5},
      {2, "gluing reproduction", "gluing", 10},
      {3, "cylinder soundness", "cylinder", 5},
      {4, "hocolim route equivalence", "hocolim-routes", 30},
      {5, "commuting square", "commuting", 60},
      {6, "pi-image laws", "pi-laws", 10},
      {7, "divisibility", "divisibility", 60},
      {8, "F round trip", "f-roundtrip", 60},
      {9, "mu/g/f laws", "mu-laws", 10},
      {10, "property suites", "properties", 30},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    dgcat::SuiteReport report;
    std::string error;
    try {
      report = dgcat::run_suite(c.suite);
    } catch (const std::exception& e) {
      report.ok = false;
      error = e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = seconds < c.budget_seconds;
    bool pass = report.ok && in_time;
    if (!pass) ++failed;
    std::printf("%s criterion %d: %s (%lld cases, %.2f s, budget %.0f s)\n", pass ? "PASS" : "FAIL", c.number, c.title,
                report.cases, seconds, c.budget_seconds);
    for (const auto& note : report.notes) std::printf("#   %s\n", note.c_str());
    for (const auto& f : report.failures) std::printf("#   failure: %s\n", f.c_str());
    if (!error.empty()) std::printf("#   error: %s\n", error.c_str());
    if (!in_time) std::printf("#   over the time budget\n");
    std::fflush(stdout);
  }
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
