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

#ifndef FREELLN_TRANSFORMS_HPP
#define FREELLN_TRANSFORMS_HPP

#include <cmath>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "freelln/common.hpp"
#include "freelln/measure.hpp"
#include "freelln/quadrature.hpp"
#include "freelln/roots.hpp"

namespace freelln {

namespace detail {

// Atoms plus quadrature nodes of the continuous part. All transform
// evaluations for one source measure run against this fixed node set, so the
// numeric path is the exact transform of the discretized proxy measure; in
// particular monotonicity and inverse consistency hold exactly, not just up
// to quadrature error.
struct NodeSet {
  std::vector<double> x;
  std::vector<double> w;
};

inline NodeSet discretize(const Measure& m, int panels = -1,
                          int nodes = kDefaultNodesPerPanel) {
  if (panels < 1) panels = default_panel_count();
  NodeSet ns;
  for (const Atom& a : m.atoms()) {
    ns.x.push_back(a.x);
    ns.w.push_back(a.w);
  }
  if (m.has_continuous_part()) {
    const GaussLegendreRule& rule = gauss_legendre(nodes);
    const double h = 1.0 / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = (p + 0.5) * h;
      for (int i = 0; i < nodes; ++i) {
        const double u = mid + 0.5 * h * rule.nodes[i];
        ns.x.push_back(m.quantile(u));
        ns.w.push_back(m.cont_mass() * 0.5 * h * rule.weights[i]);
      }
    }
  }
  return ns;
}

inline double psi(const NodeSet& ns, double u) {
  double sum = 0.0;
  for (std::size_t i = 0; i < ns.x.size(); ++i) {
    const double tu = ns.x[i] * u;
    sum += ns.w[i] * tu / (1.0 - tu);
  }
  return sum;
}

// psi + 1 as a positive sum; keeps full relative precision where psi itself
// rounds through values near delta - 1.
inline double psi_plus_one(const NodeSet& ns, double u) {
  double sum = 0.0;
  for (std::size_t i = 0; i < ns.x.size(); ++i)
    sum += ns.w[i] / (1.0 - ns.x[i] * u);
  return sum;
}

inline double psi_prime(const NodeSet& ns, double u) {
  double sum = 0.0;
  for (std::size_t i = 0; i < ns.x.size(); ++i) {
    const double d = 1.0 - ns.x[i] * u;
    sum += ns.w[i] * ns.x[i] / (d * d);
  }
  return sum;
}

inline constexpr double kBracketCap = 1e16;
inline constexpr double kChiResidualTol = 1e-12;

// Inverse of a strictly increasing map f of u on (-inf, 0): bracket from -1
// by doubling or halving, then bisect. `scale` sets the residual tolerance.
template <class F>
double invert_on_negative_axis(F&& f, double target, double scale) {
  double u = -1.0;
  double fu = f(u);
  if (fu == target) return u;
  double lo = u, hi = u;
  if (fu > target) {
    // need f smaller: move u toward -inf
    while (fu > target) {
      hi = u;
      u *= 2.0;
      if (-u > kBracketCap)
        throw NoConvergenceError("chi: bracket expansion exceeded |u| = 1e16");
      fu = f(u);
    }
    lo = u;
  } else {
    while (fu < target) {
      lo = u;
      u *= 0.5;
      if (-u < 1e-300)
        throw NoConvergenceError("chi: bracket expansion underflowed toward 0");
      fu = f(u);
    }
    hi = u;
  }
  const RootResult r = bisect_monotone(f, lo, hi, target);
  if (!r.converged || r.residual > kChiResidualTol * scale + 1e-300)
    throw NoConvergenceError("chi: bisection failed to meet the residual tolerance");
  return r.x;
}

// chi at z = t - 1 with both coordinates exact. Near the left endpoint the
// root is found through psi + 1 (target t), which is where the information
// actually lives; elsewhere through psi (target z = -omt).
inline double chi_t(const NodeSet& ns, double delta, double t, double omt) {
  // t may round to 1.0 when omt is below machine epsilon; omt carries the
  // domain information there
  if (!(t > delta && omt > 0.0))
    throw OutOfDomainError("chi: z must lie in (delta-1, 0)");
  if (t <= 0.5)
    return invert_on_negative_axis([&](double u) { return psi_plus_one(ns, u); }, t,
                                   std::max(t, 1e-3));
  return invert_on_negative_axis([&](double u) { return psi(ns, u); }, -omt,
                                 std::max(omt, 1e-3));
}

inline double chi(const NodeSet& ns, double delta, double z) {
  return chi_t(ns, delta, 1.0 + z, -z);
}

}  // namespace detail

// psi_mu(u) = integral of tu/(1-tu) d mu(t), u < 0. Strictly increasing from
// delta-1 to 0.
inline double psi(const Measure& m, double u, int panels = -1) {
  if (!(u < 0.0)) throw OutOfDomainError("psi: u must be negative");
  return detail::psi(detail::discretize(m, panels), u);
}

inline double psi_prime(const Measure& m, double u, int panels = -1) {
  if (!(u < 0.0)) throw OutOfDomainError("psi_prime: u must be negative");
  return detail::psi_prime(detail::discretize(m, panels), u);
}

// chi = psi^{-1} on (delta-1, 0).
inline double chi(const Measure& m, double z, int panels = -1) {
  const double delta = m.mass_at_zero();
  return detail::chi(detail::discretize(m, panels), delta, z);
}

// Margins of the evaluation grid around the open domain (delta-1, 0). The
// left margin is probed per measure: it only needs to stay clear of the
// bracket-expansion cap, which depends on how fast psi approaches delta-1.
// The right side has no cap (the bracket halves toward 0), so a token
// margin suffices.
inline constexpr double kSDomainMarginRight = 1e-12;
inline constexpr double kSDomainMarginProbe[] = {1e-12, 1e-9, 1e-6};
inline constexpr int kSCacheSize = 1024;

// The S-transform of a measure on [0,inf): S(z) = (z+1)/z * chi(z) on
// (delta-1, 0). Backed either by numeric inversion of psi over a fixed node
// set, or by a closed-form log S supplied by the caller (the mu_{alpha,beta}
// family). Immutable and safe for concurrent use.
class STransform {
 public:
  // ln S(t-1) parameterized by t and 1-t so callers can keep full precision
  // at both endpoints; t = 1+z, 1-t = -z.
  using LogSFn = std::function<double(double t, double omt)>;

  static STransform from_measure(const Measure& m, int panels = -1) {
    STransform st;
    st.delta_ = m.mass_at_zero();
    st.dirac_ = m.is_dirac();
    auto ns = std::make_shared<detail::NodeSet>(detail::discretize(m, panels));
    // endpoints of the proxy node set, so that the image interval and the
    // evaluated S values describe the same discretized measure
    double mean = 0.0, inv_mean = 0.0;
    bool zero_node = false;
    for (std::size_t i = 0; i < ns->x.size(); ++i) {
      mean += ns->w[i] * ns->x[i];
      if (ns->x[i] > 0.0)
        inv_mean += ns->w[i] / ns->x[i];
      else
        zero_node = true;
    }
    st.b_ = mean;
    st.a_ = zero_node ? 0.0 : 1.0 / inv_mean;
    const double delta = st.delta_;
    st.log_s_ = [ns, delta](double t, double omt) {
      const double x = detail::chi_t(*ns, delta, t, omt);
      return std::log(t) - std::log(omt) + std::log(-x);
    };
    for (double eps : kSDomainMarginProbe) {
      st.margin_lo_ = eps;
      try {
        const double t = delta + eps;
        detail::chi_t(*ns, delta, t, 1.0 - t);
        break;
      } catch (const NoConvergenceError&) {
        if (eps == kSDomainMarginProbe[2]) throw;
      }
    }
    st.build_cache();
    return st;
  }

  // Closed-form backend; a and b are the support endpoints of the limit law
  // ((integral of 1/x)^{-1} and the mean).
  static STransform from_log_s(LogSFn log_s, double delta, double a, double b,
                               bool dirac = false) {
    STransform st;
    st.log_s_ = std::move(log_s);
    st.delta_ = delta;
    st.a_ = a;
    st.b_ = b;
    st.dirac_ = dirac;
    st.exact_domain_ = true;
    st.build_cache();
    return st;
  }

  static STransform from_dirac(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("Dirac location must be positive");
    const double ln_s = -std::log(c);
    return from_log_s([ln_s](double, double) { return ln_s; }, 0.0, c, c, true);
  }

  double delta() const { return delta_; }
  double endpoint_a() const { return a_; }
  double endpoint_b() const { return b_; }
  bool is_dirac() const { return dirac_; }

  // Lower/upper t for t-integrals of ln S(t-1). The numeric path keeps a
  // margin away from the left end of (delta, 1), where the bracket cap can
  // bind; the right end has no cap and needs none as long as callers track
  // 1-t exactly.
  double t_lo() const { return exact_domain_ ? delta_ : delta_ + margin_lo_; }
  double t_hi() const { return 1.0; }

  double log_s(double t, double omt) const { return log_s_(t, omt); }

  // S(z) for z in (delta-1, 0).
  double operator()(double z) const {
    if (!(z > delta_ - 1.0 && z < 0.0))
      throw OutOfDomainError("s_eval: z must lie in (delta-1, 0)");
    return std::exp(log_s_(1.0 + z, -z));
  }

  // Image interval (1/b, 1/a) of Lemma-2.6 type; undefined for Dirac input.
  std::pair<double, double> image_endpoints() const {
    if (dirac_) throw DiracInputError("s_image_endpoints: source is a Dirac measure");
    const double inf_s = b_ == 0.0 ? kInf : (std::isinf(b_) ? 0.0 : 1.0 / b_);
    const double sup_s = a_ == 0.0 ? kInf : 1.0 / a_;
    return {inf_s, sup_s};
  }

  // (z, S(z)) on a Chebyshev grid over (delta-1+eps, -eps); diagnostic only,
  // evaluation never interpolates.
  const std::vector<std::pair<double, double>>& cache() const { return cache_; }

 private:
  void build_cache() {
    // Grid points carry exact (t, 1-t) pairs: Chebyshev-distributed over the
    // cacheable range, generated from the nearest endpoint on each half so
    // that neither coordinate cancels. Cached z = -(1-t). Exact-domain
    // transforms still keep a token margin; the open endpoints themselves
    // are not evaluable.
    const double lo_off = exact_domain_ ? 1e-9 : margin_lo_;
    const double omt_floor = exact_domain_ ? 1e-9 : kSDomainMarginRight;
    const double lo = delta_ + lo_off;
    const double hi = 1.0 - omt_floor;
    const double width = hi - lo;
    std::vector<std::pair<double, double>> pts;  // (t, omt)
    pts.reserve(kSCacheSize + 64);
    auto add_point = [&](double c) {
      if (c <= 0.5) {
        const double t = lo + width * c;
        pts.emplace_back(t, 1.0 - t);
      } else {
        const double omt = omt_floor + width * (1.0 - c);
        pts.emplace_back(1.0 - omt, omt);
      }
    };
    for (int k = 0; k < kSCacheSize; ++k)
      add_point(0.5 * (1.0 - std::cos(kPi * k / (kSCacheSize - 1.0))));
    if (delta_ > 0.0) {
      // extra points logarithmically spaced toward delta-1, where S blows up
      for (int j = 1; j <= 48; ++j) {
        const double off = lo_off * std::pow(10.0, j / 8.0);
        if (delta_ + off < 0.5 * (lo + hi)) {
          const double t = delta_ + off;
          pts.emplace_back(t, 1.0 - t);
        }
      }
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    }
    cache_.reserve(pts.size());
    double prev = kInf;
    for (const auto& [t, omt] : pts) {
      const double s = std::exp(log_s_(t, omt));
      if (!dirac_ && !(s < prev * (1.0 + 1e-12)))
        throw NoConvergenceError(
            "S-transform cache is not decreasing; source may be numerically Dirac");
      prev = s;
      cache_.emplace_back(-omt, s);
    }
    if (dirac_) {
      double s_min = cache_.front().second, s_max = s_min;
      for (const auto& [z, s] : cache_) {
        s_min = std::min(s_min, s);
        s_max = std::max(s_max, s);
      }
      if (s_max - s_min > 1e-10)
        throw NoConvergenceError("Dirac source produced a non-constant S-transform");
    }
  }

  LogSFn log_s_;
  double delta_ = 0.0;
  double a_ = 0.0;
  double b_ = kInf;
  double margin_lo_ = kSDomainMarginProbe[2];
  bool dirac_ = false;
  bool exact_domain_ = false;
  std::vector<std::pair<double, double>> cache_;
};

inline double s_eval(const STransform& st, double z) { return st(z); }

inline std::pair<double, double> s_image_endpoints(const STransform& st) {
  return st.image_endpoints();
}

}  // namespace freelln

#endif  // FREELLN_TRANSFORMS_HPP
