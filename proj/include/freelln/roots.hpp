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

#ifndef FREELLN_ROOTS_HPP
#define FREELLN_ROOTS_HPP

#include <cmath>
#include <string>

#include "freelln/common.hpp"

namespace freelln {

inline constexpr int kDefaultBisectionIterations = 200;

struct RootResult {
  double x = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Bisection for f(x) = target on [lo, hi] where f is monotone (either
// direction). The bracket must satisfy (f(lo)-target)*(f(hi)-target) <= 0.
// Stops when the residual drops below ftol or the interval collapses to
// machine resolution.
template <class F>
RootResult bisect_monotone(F&& f, double lo, double hi, double target,
                           double ftol = 0.0,
                           int max_iter = kDefaultBisectionIterations) {
  RootResult res;
  double flo = f(lo) - target;
  double fhi = f(hi) - target;
  if (flo == 0.0) {
    res = {lo, 0.0, 0, true};
    return res;
  }
  if (fhi == 0.0) {
    res = {hi, 0.0, 0, true};
    return res;
  }
  if ((flo > 0.0) == (fhi > 0.0)) {
    res.x = std::abs(flo) < std::abs(fhi) ? lo : hi;
    res.residual = std::min(std::abs(flo), std::abs(fhi));
    res.converged = false;
    return res;
  }
  double x = lo, fx = flo;
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      // interval collapsed to adjacent doubles
      res.iterations = i;
      break;
    }
    const double fmid = f(mid) - target;
    res.iterations = i + 1;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
    x = mid;
    fx = fmid;
    if (fmid == 0.0 || std::abs(fmid) <= ftol) break;
  }
  // report the endpoint with the smaller residual
  if (std::abs(flo) < std::abs(fx)) {
    x = lo;
    fx = flo;
  }
  if (std::abs(fhi) < std::abs(fx)) {
    x = hi;
    fx = fhi;
  }
  res.x = x;
  res.residual = std::abs(fx);
  res.converged = true;
  return res;
}

}  // namespace freelln

#endif  // FREELLN_ROOTS_HPP
