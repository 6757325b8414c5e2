// Copyright 2026 The freelln Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Seeded deterministically.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "freelln/verify.hpp"

namespace {

constexpr std::uint64_t kSeed = 42;

struct Criterion {
  int number;
  std::string title;
  std::function<std::vector<freelln::Check>()> run;
};

}  // namespace

int main() {
  using namespace freelln;
  const std::vector<Criterion> criteria = {
      {1, "log-integral quadrature fixtures", [] { return checks_ln_fixtures(); }},
      {2, "S-transform round trips and monotonicity", [] { return checks_inversion(); }},
      {3, "log mean / rho / log variance on the family grid",
       [] { return checks_family_log_grid(); }},
      {4, "density suite: normalization, forms, collapse, moments",
       [] { return checks_density_suite(kSeed); }},
      {5, "sin-ratio integral identity grid", [] { return checks_sin_ratio_grid(); }},
      {6, "reciprocal duality of densities", [] { return checks_duality(); }},
      {7, "Monte Carlo law of large numbers", [] { return checks_mc_lln(kSeed); }},
      {8, "Dirac degeneracy", [] { return checks_dirac_degeneracy(kSeed); }},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<Check> checks;
    bool pass = true;
    std::string error;
    try {
      checks = c.run();
      for (const Check& ch : checks) pass = pass && ch.pass;
    } catch (const std::exception& e) {
      pass = false;
      error = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %d: %s (%.1fs)\n", pass ? "PASS" : "FAIL", c.number,
                c.title.c_str(), secs);
    for (const Check& ch : checks)
      std::printf("        %-6s %s/%s value=%.6g tolerance=%.6g\n",
                  ch.pass ? "ok" : "FAILED", ch.theorem_tag.c_str(), ch.name.c_str(),
                  ch.value, ch.tolerance);
    if (!error.empty()) std::printf("        exception: %s\n", error.c_str());
    if (!pass) ++failures;
    std::fflush(stdout);
  }
  if (failures > 0)
    std::printf("%d of %zu acceptance criteria failed\n", failures, criteria.size());
  else
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
  return failures == 0 ? 0 : 1;
}
