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

#ifndef FREELLN_FAMILY_HPP
#define FREELLN_FAMILY_HPP

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "freelln/common.hpp"
#include "freelln/limit_law.hpp"
#include "freelln/measure.hpp"
#include "freelln/quadrature.hpp"
#include "freelln/roots.hpp"
#include "freelln/transforms.hpp"

namespace freelln {

// Parameters of the two-parameter multiplicative semigroup with
// S(z) = (-z)^beta / (1+z)^alpha. (0,0) is the Dirac measure at 1 and is
// excluded from density and moment operations.
struct FamilyParams {
  double alpha = 0.0;
  double beta = 0.0;
};

// Angles of the trigonometric density parametrization: phi1 = (pi-theta)/(alpha+1),
// phi2 = theta/(beta+1), so (alpha+1) phi1 + (beta+1) phi2 = pi.
struct PhiPair {
  double phi1;
  double phi2;
  double theta;
};

namespace detail {

inline constexpr double kFamilyDegenerateEps = 1e-8;

inline void require_not_origin(const FamilyParams& p, const char* op) {
  if (p.alpha == 0.0 && p.beta == 0.0)
    throw OutOfDomainError(std::string(op) + ": (alpha, beta) = (0, 0) is the Dirac point");
}

// Trigonometry of the parameter triangle at a given theta. Angles that
// approach pi are evaluated through their exact complements so the sines
// keep full relative precision at both ends of (0, pi); both theta and
// pi - theta must be supplied exactly by the caller.
struct FamilyAngles {
  double phi1, phi2;
  double s1, c1;  // sin/cos of phi1
  double s2, c2;  // sin/cos of phi2
  double s12;     // sin(phi1 + phi2)
};

inline FamilyAngles family_angles(const FamilyParams& p, double theta,
                                  double pi_m_theta) {
  const double da = p.alpha + 1.0;
  const double db = p.beta + 1.0;
  FamilyAngles an;
  an.phi1 = pi_m_theta / da;
  an.phi2 = theta / db;
  // exact complements: pi - phi1 = (alpha pi + theta)/(alpha+1), etc.
  const double phi1c = (p.alpha * kPi + theta) / da;
  const double phi2c = (p.beta * kPi + pi_m_theta) / db;
  if (an.phi1 <= phi1c) {
    an.s1 = std::sin(an.phi1);
    an.c1 = std::cos(an.phi1);
  } else {
    an.s1 = std::sin(phi1c);
    an.c1 = -std::cos(phi1c);
  }
  if (an.phi2 <= phi2c) {
    an.s2 = std::sin(an.phi2);
    an.c2 = std::cos(an.phi2);
  } else {
    an.s2 = std::sin(phi2c);
    an.c2 = -std::cos(phi2c);
  }
  // complement of phi1 + phi2, written without cancellation on either branch
  const double denom = da * db;
  const double phi12 = an.phi1 + an.phi2;
  const double phi12c =
      p.beta >= p.alpha
          ? (p.alpha * kPi * db + theta * (p.beta - p.alpha)) / denom
          : (p.beta * kPi * da + pi_m_theta * (p.alpha - p.beta)) / denom;
  an.s12 = std::sin(std::min(phi12, phi12c));
  return an;
}

// ln of the parametrizing map
//   u(theta) = sin^{a+1}(phi2) / sin^{b+1}(phi1) * sin^{b-a}(phi1+phi2),
// with zero exponents skipped so that integer corner cases cannot produce
// 0 * log(0).
inline double family_log_u(const FamilyParams& p, double theta, double pi_m_theta) {
  const FamilyAngles an = family_angles(p, theta, pi_m_theta);
  double lu = (p.alpha + 1.0) * std::log(an.s2) - (p.beta + 1.0) * std::log(an.s1);
  if (p.beta != p.alpha) lu += (p.beta - p.alpha) * std::log(an.s12);
  return lu;
}

// A(phi1, phi2) from the derivative of ln u; strictly positive inside the
// parameter triangle, which is what makes u(theta) strictly increasing. For
// alpha = beta the cross term collapses to (alpha+1) sin(phi1+phi2), which
// avoids the cancellation the raw sum has near the corners.
inline double family_a_term(const FamilyParams& p, const FamilyAngles& an) {
  if (p.alpha == p.beta) {
    const double cross = (p.alpha + 1.0) * an.s12;
    return cross * cross;
  }
  const double cross = (p.alpha + 1.0) * an.s1 * an.c2 + (p.beta + 1.0) * an.c1 * an.s2;
  const double diff = (p.alpha - p.beta) * an.s1 * an.s2;
  return cross * cross + diff * diff;
}

}  // namespace detail

// S(z) = (-z)^beta / (1+z)^alpha on (-1, 0).
inline double family_s(const FamilyParams& p, double z) {
  if (!(z > -1.0 && z < 0.0))
    throw OutOfDomainError("family_s: z must lie in (-1, 0)");
  return std::exp(p.beta * std::log(-z) - p.alpha * std::log1p(z));
}

// ln S(t-1) = beta ln(1-t) - alpha ln t, the closed-form backend for the
// t-integrals of the limit-law functionals.
inline double family_log_s(const FamilyParams& p, double t, double omt) {
  double v = 0.0;
  if (p.beta != 0.0) v += p.beta * std::log(omt);
  if (p.alpha != 0.0) v -= p.alpha * std::log(t);
  return v;
}

// Fractional moments (extended-real): infinite outside the admissible
// gamma-range, Gamma-function products inside.
inline double family_moment(const FamilyParams& p, double gamma) {
  if (p.alpha == 0.0 && p.beta == 0.0) return 1.0;  // Dirac at 1
  if (gamma == 0.0) return 1.0;
  const double a = p.alpha, b = p.beta;
  if (b == 0.0) {
    if (!(gamma > -1.0 / (1.0 + a))) return kInf;
    return std::tgamma(1.0 + gamma * (1.0 + a)) /
           (std::tgamma(1.0 + gamma) * std::tgamma(2.0 + gamma * a));
  }
  if (a == 0.0) {
    if (!(gamma < 1.0 / (1.0 + b))) return kInf;
    return std::tgamma(1.0 - gamma * (1.0 + b)) /
           (std::tgamma(1.0 - gamma) * std::tgamma(2.0 - gamma * b));
  }
  if (!(gamma > -1.0 / (1.0 + a) && gamma < 1.0 / (1.0 + b))) return kInf;
  return detail::sinc_pi(gamma) * std::tgamma(1.0 + gamma + gamma * a) *
         std::tgamma(1.0 - gamma - gamma * b) /
         std::tgamma(2.0 + gamma * a - gamma * b);
}

// Support of mu_{alpha,beta}: bounded above only when beta = 0, bounded away
// from 0 only when alpha = 0.
inline std::pair<double, double> family_support(const FamilyParams& p) {
  detail::require_not_origin(p, "family_support");
  const double a = p.alpha, b = p.beta;
  double lo = 0.0, hi = kInf;
  if (b == 0.0) hi = std::exp((a + 1.0) * std::log(a + 1.0) - a * std::log(a));
  if (a == 0.0) lo = std::exp(b * std::log(b) - (b + 1.0) * std::log(b + 1.0));
  return {lo, hi};
}

// The unique (phi1, phi2) with (alpha+1) phi1 + (beta+1) phi2 = pi and
// u(phi1, phi2) = x, found by bisection on the strictly increasing u(theta).
inline PhiPair solve_phi(const FamilyParams& p, double x) {
  detail::require_not_origin(p, "solve_phi");
  if (!(x > 0.0)) throw OutOfDomainError("solve_phi: x must be positive");
  const double target = std::log(x);
  auto lu = [&](double theta) { return detail::family_log_u(p, theta, kPi - theta); };
  const RootResult r = bisect_monotone(lu, 1e-12, kPi - 1e-12, target);
  const double u = std::exp(lu(r.x));
  if (!r.converged || std::abs(u - x) > 1e-11 * std::max(1.0, x))
    throw NoConvergenceError("solve_phi: bisection failed to reach the target residual");
  return {(kPi - r.x) / (p.alpha + 1.0), r.x / (p.beta + 1.0), r.x};
}

namespace detail {

// A position in (0, pi) with its complement tracked exactly, so sines near
// both ends keep full relative precision.
struct ThetaPos {
  double theta;
  double pi_m_theta;
};

// Solves family_log_u = target over the full representable range by
// bisecting theta on the left half and pi - theta on the right half. This
// reaches x many orders of magnitude beyond what a plain theta bisection
// can resolve near pi. Returns nullopt when the target lies outside the
// attainable range (deep tail or outside a bounded support).
inline std::optional<ThetaPos> solve_theta_for_log_u(const FamilyParams& p,
                                                     double target) {
  constexpr double kFloor = 1e-280;
  const double half = kPi / 2.0;
  const double lu_mid = family_log_u(p, half, half);
  if (target <= lu_mid) {
    auto g = [&](double theta) { return family_log_u(p, theta, kPi - theta); };
    if (target < g(kFloor)) return std::nullopt;
    const RootResult r = bisect_monotone(g, kFloor, half, target);
    if (!r.converged) return std::nullopt;
    return ThetaPos{r.x, kPi - r.x};
  }
  auto h = [&](double pmt) { return family_log_u(p, kPi - pmt, pmt); };
  if (target > h(kFloor)) return std::nullopt;
  const RootResult r = bisect_monotone(h, kFloor, half, target);
  if (!r.converged) return std::nullopt;
  return ThetaPos{kPi - r.x, r.x};
}

// Trigonometric density at a solved angle position.
inline double density_from_theta(const FamilyParams& p, const ThetaPos& tp) {
  const FamilyAngles an = family_angles(p, tp.theta, tp.pi_m_theta);
  double lf = (p.beta + 2.0) * std::log(an.s1) - p.alpha * std::log(an.s2);
  if (p.alpha - p.beta != 1.0) lf += (p.alpha - p.beta - 1.0) * std::log(an.s12);
  const double f = std::exp(lf) / kPi;
  return std::isfinite(f) ? f : 0.0;
}

}  // namespace detail

// Continuous density of mu_{alpha,beta} on (0, inf); zero outside the
// support. Near-degenerate alpha or beta dispatch to the single-angle
// parametrizations, where the two-angle exponents become removable.
inline double family_density(const FamilyParams& p, double x) {
  detail::require_not_origin(p, "family_density");
  if (!(x > 0.0)) throw OutOfDomainError("family_density: x must be positive");
  if (p.alpha < detail::kFamilyDegenerateEps && p.beta < detail::kFamilyDegenerateEps)
    throw OutOfDomainError("family_density: parameters too close to the Dirac point (0,0)");
  const auto [lo, hi] = family_support(p);
  if (x <= lo || x >= hi) return 0.0;
  // near-degenerate parameters snap onto the exact single-angle boundary,
  // where the two-angle exponents have their removable form
  FamilyParams q = p;
  if (q.beta < detail::kFamilyDegenerateEps) q.beta = 0.0;
  if (q.alpha < detail::kFamilyDegenerateEps) q.alpha = 0.0;
  const auto tp = detail::solve_theta_for_log_u(q, std::log(x));
  if (!tp) return 0.0;  // beyond the representable tail
  return detail::density_from_theta(q, *tp);
}

// Distribution function of the limit law nu_{alpha,beta}, characterized by
// F(t^alpha / (1-t)^beta) = t. Closed forms when alpha or beta vanishes or
// they coincide; bisection on the defining relation otherwise.
inline double family_limit_cdf(const FamilyParams& p, double x) {
  detail::require_not_origin(p, "family_limit_cdf");
  if (!(x > 0.0)) throw OutOfDomainError("family_limit_cdf: x must be positive");
  const double a = p.alpha, b = p.beta;
  if (b == 0.0) return x >= 1.0 ? 1.0 : std::pow(x, 1.0 / a);
  if (a == 0.0) return x <= 1.0 ? 0.0 : 1.0 - std::pow(x, -1.0 / b);
  if (a == b) return 1.0 / (1.0 + std::pow(x, -1.0 / a));
  auto g = [&](double t) { return a * std::log(t) - b * std::log1p(-t); };
  const RootResult r = bisect_monotone(g, 1e-15, 1.0 - 1e-15, std::log(x));
  return r.x;
}

// mu_{beta,alpha} is the image of mu_{alpha,beta} under x -> 1/x.
inline FamilyParams family_dual(const FamilyParams& p) { return {p.beta, p.alpha}; }

// Exact free multiplicative power: parameters scale linearly.
inline FamilyParams family_power(const FamilyParams& p, double n) {
  if (!(n > 0.0)) throw std::invalid_argument("family_power: n must be positive");
  return {n * p.alpha, n * p.beta};
}

// Both sides of the sin-ratio integral identity
//   (sin theta / pi) * int_0^inf t^gamma / (t^2 + 2 cos(theta) t + 1) dt
//     = sin(theta gamma) / sin(pi gamma),
// the left side by quadrature after t = e^w. Used as a numerical fixture.
inline std::pair<double, double> sin_ratio_integral_check(double theta, double gamma) {
  if (!(theta > -kPi && theta < kPi))
    throw OutOfDomainError("sin_ratio_integral_check: theta must lie in (-pi, pi)");
  if (!(gamma > -1.0 && gamma < 1.0))
    throw OutOfDomainError("sin_ratio_integral_check: gamma must lie in (-1, 1)");
  const double rhs = gamma == 0.0 ? theta / kPi : std::sin(theta * gamma) / std::sin(kPi * gamma);
  if (theta == 0.0) return {0.0, rhs};
  const double c = std::cos(theta);
  auto integrand = [&](double w) { return std::cosh(gamma * w) / (std::cosh(w) + c); };
  const double decay = 1.0 - std::abs(gamma);
  const double w_max = std::min(60.0 / decay, 6000.0);
  // panel width ~2 keeps Gauss-Legendre well inside spectral accuracy here
  const int panels = static_cast<int>(std::ceil(w_max / 2.0));
  const double lhs = std::sin(theta) / kPi * integrate_uniform(integrand, 0.0, w_max, panels, 32);
  return {lhs, rhs};
}

// Theta-parametrized distribution engine for mu_{alpha,beta}. The CDF as a
// function of theta has the closed-form integrand
//   g(theta) = A(phi1,phi2) / (pi (alpha+1)(beta+1) sin^2(phi1+phi2)),
// bounded and smooth on (0, pi), so cumulative tables, quantiles and
// x-space expectations are all cheap and accurate. Immutable after
// construction.
class FamilyDistribution {
 public:
  explicit FamilyDistribution(FamilyParams p) : p_(p) {
    detail::require_not_origin(p, "FamilyDistribution");
    build_table();
  }

  const FamilyParams& params() const { return p_; }

  double x_of_theta(double theta, double pi_m_theta) const {
    return std::exp(detail::family_log_u(p_, theta, pi_m_theta));
  }

  // dF/dtheta
  double theta_pdf(double theta, double pi_m_theta) const {
    const detail::FamilyAngles an = detail::family_angles(p_, theta, pi_m_theta);
    return detail::family_a_term(p_, an) /
           (kPi * (p_.alpha + 1.0) * (p_.beta + 1.0) * an.s12 * an.s12);
  }

  // dx/dtheta, used for x-space change of variables
  double dx_dtheta(double theta, double pi_m_theta) const {
    const detail::FamilyAngles an = detail::family_angles(p_, theta, pi_m_theta);
    const double dlnu = detail::family_a_term(p_, an) /
                        ((p_.alpha + 1.0) * (p_.beta + 1.0) * an.s1 * an.s2 * an.s12);
    return x_of_theta(theta, pi_m_theta) * dlnu;
  }

  double cdf_theta(double theta) const {
    if (theta <= 0.0) return 0.0;
    if (theta >= kPi) return 1.0;
    const double pos = theta / kPi * kPanels;
    int k = std::min(static_cast<int>(pos), kPanels - 1);
    double partial = cum_[k];
    const double lo = k * kPi / kPanels;
    partial += panel_partial(lo, theta);
    return std::min(partial / norm_, 1.0);
  }

  double cdf(double x) const {
    if (!(x > 0.0)) return 0.0;
    auto lu = [&](double th) { return detail::family_log_u(p_, th, kPi - th); };
    const double lx = std::log(x);
    if (lu(1e-14) >= lx) return 0.0;
    if (lu(kPi - 1e-14) <= lx) return 1.0;
    const RootResult r = bisect_monotone(lu, 1e-14, kPi - 1e-14, lx);
    return cdf_theta(r.x);
  }

  double quantile(double u) const {
    const double uc = std::min(std::max(u, 1e-300), 1.0 - 0x1.0p-53);
    auto f = [&](double th) { return cdf_theta(th); };
    const RootResult r = bisect_monotone(f, 1e-14, kPi - 1e-14, uc);
    return x_of_theta(r.x, kPi - r.x);
  }

  // integral of h(x) f(x) dx over the support, by the theta substitution;
  // extended-real (infinite when the theta-integral diverges).
  template <class H>
  double expectation(H&& h) const {
    auto g = [&](double theta, double pi_m_theta) {
      return h(x_of_theta(theta, pi_m_theta)) * theta_pdf(theta, pi_m_theta);
    };
    const RefinedIntegral r = integrate_interval_refined(g, 0.0, kPi);
    return r.diverged ? kInf : r.value;
  }

  // Exact-callable Measure backed by this engine.
  Measure measure() const {
    FamilyDistribution self = *this;
    return Measure::from_quantile_fn([self](double u) { return self.quantile(u); });
  }

  // Tabulated Measure (linear interpolation between knots drawn from the
  // cumulative table); exercises the generic quantile-table code paths.
  Measure tabulated_measure(int knots = 2048) const {
    if (knots < 8) throw std::invalid_argument("tabulated_measure: too few knots");
    std::vector<double> us, xs;
    us.reserve(knots);
    xs.reserve(knots);
    const int stride = std::max(1, kPanels / knots);
    double last_u = 0.0, last_x = -1.0;
    for (int k = 1; k < kPanels; k += stride) {
      const double u = cum_[k] / norm_;
      const double theta = k * kPi / kPanels;
      const double x = x_of_theta(theta, kPi - theta);
      if (u <= last_u || x <= last_x || u >= 1.0) continue;
      us.push_back(u);
      xs.push_back(x);
      last_u = u;
      last_x = x;
    }
    return Measure::from_quantile_table(std::move(us), std::move(xs));
  }

 private:
  static constexpr int kPanels = 4096;
  static constexpr int kPanelNodes = 16;

  double panel_partial(double lo, double hi) const {
    const GaussLegendreRule& rule = gauss_legendre(kPanelNodes);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double s = 0.0;
    for (int i = 0; i < kPanelNodes; ++i) {
      const double th = mid + half * rule.nodes[i];
      s += rule.weights[i] * theta_pdf(th, kPi - th);
    }
    return s * half;
  }

  void build_table() {
    cum_.resize(kPanels + 1);
    cum_[0] = 0.0;
    const double h = kPi / kPanels;
    for (int k = 0; k < kPanels; ++k)
      cum_[k + 1] = cum_[k] + panel_partial(k * h, (k + 1) * h);
    norm_ = cum_[kPanels];
    if (!(std::abs(norm_ - 1.0) < 1e-6))
      throw NoConvergenceError("FamilyDistribution: cumulative table failed to normalize");
  }

  FamilyParams p_;
  std::vector<double> cum_;
  double norm_ = 1.0;
};

// Closed-form S-transform of mu_{alpha,beta} with exact limit-law support
// endpoints from the fractional-moment formulas.
inline STransform family_stransform(const FamilyParams& p) {
  if (p.alpha == 0.0 && p.beta == 0.0) return STransform::from_dirac(1.0);
  const double b = family_moment(p, 1.0);
  const double m_inv = family_moment(p, -1.0);
  const double a = std::isinf(m_inv) ? 0.0 : 1.0 / m_inv;
  FamilyParams params = p;
  return STransform::from_log_s(
      [params](double t, double omt) { return family_log_s(params, t, omt); }, 0.0, a, b,
      false);
}

inline LimitLaw family_limit_law(const FamilyParams& p) {
  return LimitLaw(family_stransform(p));
}

// Exact-quantile Measure for mu_{alpha,beta}.
inline Measure family_measure(const FamilyParams& p) {
  if (p.alpha == 0.0 && p.beta == 0.0) return Measure::dirac(1.0);
  return FamilyDistribution(p).measure();
}

}  // namespace freelln

#endif  // FREELLN_FAMILY_HPP
