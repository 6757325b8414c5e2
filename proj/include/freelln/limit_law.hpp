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

#ifndef FREELLN_LIMIT_LAW_HPP
#define FREELLN_LIMIT_LAW_HPP

#include <cmath>
#include <utility>

#include "freelln/common.hpp"
#include "freelln/measure.hpp"
#include "freelln/quadrature.hpp"
#include "freelln/roots.hpp"
#include "freelln/transforms.hpp"

namespace freelln {

namespace detail {

// integral over (t_lo, t_hi) of g(t, 1-t) with endpoint refinement; both
// coordinates stay exact at their ends under the affine map.
template <class G>
RefinedIntegral t_integral(const STransform& st, G&& g) {
  const double t_lo = st.t_lo();
  const double t_hi = st.t_hi();
  const double width = t_hi - t_lo;
  const double omt_hi = 1.0 - t_hi;
  auto mapped = [&](double w, double omw) {
    return g(t_lo + width * w, omt_hi + width * omw);
  };
  RefinedIntegral r = integrate_unit_refined(mapped);
  r.value *= width;
  return r;
}

inline double sinc_pi(double gamma) {
  if (std::abs(gamma) <= 1e-8) {
    const double pg = kPi * gamma;
    return 1.0 - pg * pg / 6.0;
  }
  return std::sin(kPi * gamma) / (kPi * gamma);
}

}  // namespace detail

// The weak limit of the rescaled n-fold powers: nu([0, 1/S(t-1)]) = t for
// t in (delta, 1), with nu({0}) = delta. Quantile and CDF come directly from
// the S-transform; no density is ever formed.
class LimitLaw {
 public:
  explicit LimitLaw(STransform st) : s_(std::move(st)) {}

  const STransform& transform() const { return s_; }
  double atom_at_zero() const { return s_.delta(); }
  std::pair<double, double> support() const { return {s_.endpoint_a(), s_.endpoint_b()}; }

  // t -> 1/S(t-1), strictly increasing on (delta, 1) for non-Dirac sources.
  double quantile(double t) const {
    if (!(t > s_.delta() && t < 1.0))
      throw OutOfDomainError("limit quantile: t must lie in (delta, 1)");
    const double tc = std::max(t, s_.t_lo());
    return std::exp(-s_.log_s(tc, 1.0 - tc));
  }

  double cdf(double x) const {
    if (std::isnan(x)) throw OutOfDomainError("limit cdf: x must be a number");
    if (x < 0.0) return 0.0;  // left limits at 0 probe here
    const double a = s_.endpoint_a();
    const double b = s_.endpoint_b();
    if (s_.is_dirac()) return x >= b ? 1.0 : 0.0;
    if (x <= a) return s_.delta();
    if (x >= b) return 1.0;
    auto g = [&](double t) { return -s_.log_s(t, 1.0 - t); };
    const RootResult r =
        bisect_monotone(g, s_.t_lo(), 1.0 - 0x1.0p-53, std::log(x));
    return r.x;
  }

  // nu as a Measure: callable quantile plus the atom at 0.
  Measure measure() const {
    const double delta = s_.delta();
    if (s_.is_dirac()) return Measure::dirac(s_.endpoint_b());
    STransform st = s_;
    auto q = [st, delta](double u) {
      const double t = delta + (1.0 - delta) * u;
      const double tc = std::min(std::max(t, st.t_lo()), 1.0 - 0x1.0p-53);
      return std::exp(-st.log_s(tc, 1.0 - tc));
    };
    std::vector<Atom> atoms;
    if (delta > 0.0) atoms.push_back({0.0, delta});
    return Measure::from_quantile_fn(q, 1.0 - delta, std::move(atoms));
  }

 private:
  STransform s_;
};

inline double limit_cdf(const LimitLaw& ll, double x) { return ll.cdf(x); }

// Empirical version of the fixed-point identity: for samples of nu_n,
//   (1/N) sum (1 + (1-t)/t * S(t-1)^n * x^n)^{-1} - t
// should be small. The summand is evaluated in log space.
inline double lln_identity_residual(const STransform& st, const EmpiricalDist& emp,
                                    int n, double t) {
  if (n < 1) throw std::invalid_argument("lln_identity_residual: n must be >= 1");
  if (!(t > st.delta() && t < 1.0))
    throw OutOfDomainError("lln_identity_residual: t must lie in (delta, 1)");
  const double omt = 1.0 - t;
  const double log_pref = std::log(omt) - std::log(t) + n * st.log_s(t, omt);
  double sum = 0.0;
  for (double x : emp.samples()) {
    if (x == 0.0) {
      sum += 1.0;
      continue;
    }
    const double l = log_pref + n * std::log(x);
    sum += l > 0.0 ? std::exp(-l) / (1.0 + std::exp(-l)) : 1.0 / (1.0 + std::exp(l));
  }
  return sum / static_cast<double>(emp.size()) - t;
}

// E_mu(ln x) = -integral of ln S(t-1) dt; also equals E_nu(ln x).
inline double log_mean(const STransform& st) {
  auto g = [&](double t, double omt) { return st.log_s(t, omt); };
  const RefinedIntegral r = detail::t_integral(st, g);
  if (r.diverged) throw DivergesError("log_mean: ln S integral diverged");
  return -r.value;
}

// rho(mu) = integral of ln((1-t)/t) ln S(t-1) dt; nonnegative, zero exactly
// for Dirac measures, additive under free multiplicative convolution.
inline double rho_functional(const STransform& st) {
  auto g = [&](double t, double omt) {
    return (std::log(omt) - std::log(t)) * st.log_s(t, omt);
  };
  const RefinedIntegral r = detail::t_integral(st, g);
  if (r.diverged) throw DivergesError("rho: integral diverged");
  return std::max(r.value, 0.0);
}

struct LogVariancePair {
  double var_mu;  // variance of ln x under mu
  double var_nu;  // variance of ln x under the limit law
};

// V_mu(ln x) = V_nu(ln x) + 2 rho(mu), as extended reals.
inline LogVariancePair log_variance(const STransform& st) {
  auto g2 = [&](double t, double omt) {
    const double l = st.log_s(t, omt);
    return l * l;
  };
  const RefinedIntegral second = detail::t_integral(st, g2);
  if (second.diverged) return {kInf, kInf};
  auto g1 = [&](double t, double omt) { return st.log_s(t, omt); };
  const RefinedIntegral first = detail::t_integral(st, g1);
  if (first.diverged) return {kInf, kInf};
  const double var_nu = std::max(second.value - first.value * first.value, 0.0);
  const double var_mu = var_nu + 2.0 * rho_functional(st);
  return {var_mu, var_nu};
}

struct LogMoments {
  double mean_ln;
  double rho;
  double var_mu;
  double var_nu;
};

inline LogMoments log_moments(const STransform& st) {
  const LogVariancePair v = log_variance(st);
  return {log_mean(st), rho_functional(st), v.var_mu, v.var_nu};
}

// V_{mu boxtimes n}(ln x) = n^2 V_nu + 2 n rho = n V_mu + n(n-1) V_nu.
inline double nfold_log_variance(const STransform& st, double n) {
  if (!(n >= 1.0)) throw std::invalid_argument("nfold_log_variance: n must be >= 1");
  const LogVariancePair v = log_variance(st);
  if (std::isinf(v.var_nu)) return kInf;
  return n * n * v.var_nu + 2.0 * n * rho_functional(st);
}

// integral of x^gamma d mu via sin(pi gamma)/(pi gamma) times the t-integral
// of ((1-t)/t * S(t-1))^{-gamma}; extended-real.
inline double fractional_moment(const STransform& st, double gamma) {
  if (!(gamma > -1.0 && gamma < 1.0))
    throw OutOfDomainError("fractional_moment: gamma must lie in (-1, 1)");
  if (gamma == 0.0) return 1.0;
  auto g = [&](double t, double omt) {
    const double l = std::log(omt) - std::log(t) + st.log_s(t, omt);
    return std::exp(-gamma * l);
  };
  const RefinedIntegral r = detail::t_integral(st, g);
  if (r.diverged) return kInf;
  return detail::sinc_pi(gamma) * r.value;
}

// integral of x^gamma d nu = t-integral of S(t-1)^{-gamma}, any real gamma.
inline double limit_fractional_moment(const STransform& st, double gamma) {
  if (gamma == 0.0) return 1.0;
  auto g = [&](double t, double omt) { return std::exp(-gamma * st.log_s(t, omt)); };
  const RefinedIntegral r = detail::t_integral(st, g);
  if (r.diverged) return kInf;
  return r.value;
}

inline double limit_fractional_moment(const LimitLaw& ll, double gamma) {
  return limit_fractional_moment(ll.transform(), gamma);
}

// Measure-level conveniences; each constructs the numeric transform.
inline double log_mean(const Measure& m) { return log_mean(STransform::from_measure(m)); }
inline double rho_functional(const Measure& m) {
  return rho_functional(STransform::from_measure(m));
}
inline LogVariancePair log_variance(const Measure& m) {
  return log_variance(STransform::from_measure(m));
}
inline double nfold_log_variance(const Measure& m, double n) {
  return nfold_log_variance(STransform::from_measure(m), n);
}
inline double fractional_moment(const Measure& m, double gamma) {
  return fractional_moment(STransform::from_measure(m), gamma);
}

}  // namespace freelln

#endif  // FREELLN_LIMIT_LAW_HPP
