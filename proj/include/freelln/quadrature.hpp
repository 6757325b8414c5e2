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

#ifndef FREELLN_QUADRATURE_HPP
#define FREELLN_QUADRATURE_HPP

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <vector>

#include "freelln/common.hpp"

namespace freelln {

// Gauss-Legendre nodes and weights on [-1,1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

inline GaussLegendreRule make_gauss_legendre(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // one polishing pass after convergence
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        x -= p1 / dp;
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace detail

inline const GaussLegendreRule& gauss_legendre(int n) {
  static std::map<int, GaussLegendreRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, detail::make_gauss_legendre(n)).first;
  return it->second;
}

// Default panel count for fixed-order composite quadrature on (0,1).
// Overridable by the CLI via the FREELLN_PANELS environment hook.
inline int& default_panel_count() {
  static int panels = 16;
  return panels;
}

inline constexpr int kDefaultNodesPerPanel = 64;

// Composite Gauss-Legendre over [a,b] with uniform panels; f takes a point.
template <class F>
double integrate_uniform(F&& f, double a, double b, int panels,
                         int nodes = kDefaultNodesPerPanel) {
  const GaussLegendreRule& rule = gauss_legendre(nodes);
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double panel = 0.0;
    for (int i = 0; i < nodes; ++i)
      panel += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    sum += 0.5 * h * panel;
  }
  return sum;
}

// Outcome of an endpoint-refined integral over (0,1); `value` is meaningful
// only when `diverged` is false.
struct RefinedIntegral {
  double value = 0.0;
  bool diverged = false;
};

inline constexpr int kDefaultRefineLevels = 80;

// Integral over (0,1) of g(t, 1-t) with geometric (dyadic) panel refinement
// toward both endpoints. The integrand receives t and 1-t separately so that
// neither coordinate loses precision near its endpoint; panels on the right
// half are generated in the 1-t coordinate. The remaining mass beyond the
// deepest panel is estimated by geometric extrapolation of the two innermost
// panel sums; extrapolation ratios >= 0.95, non-finite panel values, or
// partial sums beyond kDivergenceThreshold report divergence.
template <class G>
RefinedIntegral integrate_unit_refined(G&& g, int levels = kDefaultRefineLevels,
                                       int nodes = kDefaultNodesPerPanel) {
  const GaussLegendreRule& rule = gauss_legendre(nodes);
  RefinedIntegral out;
  double total = 0.0;

  // side 0: panels in the t coordinate, side 1: panels in the 1-t coordinate
  for (int side = 0; side < 2; ++side) {
    double prev_panel = 0.0;
    double last_panel = 0.0;
    for (int level = 1; level <= levels; ++level) {
      const double hi = std::ldexp(1.0, -level);      // 2^-level
      const double lo = 0.5 * hi;
      const double mid = 0.5 * (lo + hi);
      const double halfwidth = 0.5 * (hi - lo);
      double panel = 0.0;
      for (int i = 0; i < nodes; ++i) {
        const double s = mid + halfwidth * rule.nodes[i];
        const double t = (side == 0) ? s : 1.0 - s;
        const double omt = (side == 0) ? 1.0 - s : s;
        panel += rule.weights[i] * g(t, omt);
      }
      panel *= halfwidth;
      if (!std::isfinite(panel)) {
        out.diverged = true;
        return out;
      }
      total += panel;
      if (std::abs(total) > kDivergenceThreshold) {
        out.diverged = true;
        return out;
      }
      prev_panel = last_panel;
      last_panel = panel;
    }
    // geometric tail beyond the deepest panel
    const double pa = std::abs(prev_panel);
    const double pb = std::abs(last_panel);
    if (pb > 0.0 && pa > 0.0) {
      const double ratio = pb / pa;
      if (ratio >= 0.95) {
        out.diverged = true;
        return out;
      }
      total += last_panel * ratio / (1.0 - ratio);
    }
  }
  out.value = total;
  out.diverged = !std::isfinite(total) || std::abs(total) > kDivergenceThreshold;
  return out;
}

// Refined integral over (a,b): g receives (x, b-x) with both coordinates
// accurate at their respective endpoints.
template <class G>
RefinedIntegral integrate_interval_refined(G&& g, double a, double b,
                                           int levels = kDefaultRefineLevels,
                                           int nodes = kDefaultNodesPerPanel) {
  const double width = b - a;
  auto mapped = [&](double t, double omt) { return g(a + width * t, width * omt); };
  RefinedIntegral r = integrate_unit_refined(mapped, levels, nodes);
  r.value *= width;
  return r;
}

}  // namespace freelln

#endif  // FREELLN_QUADRATURE_HPP
