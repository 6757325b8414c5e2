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

#include <cmath>
#include <vector>

#include <doctest.h>

#include "freelln/family.hpp"

using namespace freelln;

namespace {

// free Poisson density on (0,4)
double mp_density(double x) {
  return (x > 0.0 && x < 4.0) ? std::sqrt((4.0 - x) / x) / (2.0 * kPi) : 0.0;
}

// its reciprocal image on (1/4, inf)
double mp_reciprocal_density(double x) {
  return x > 0.25 ? std::sqrt(4.0 * x - 1.0) / (2.0 * kPi * x * x) : 0.0;
}

// equal-parameter closed form
double equal_param_density(double alpha, double t) {
  const double phi = kPi / (alpha + 1.0);
  const double r = std::pow(t, 1.0 / (alpha + 1.0));
  return std::sin(phi) / (kPi * t * (r + 2.0 * std::cos(phi) + 1.0 / r));
}

// density evaluated through the general two-angle route regardless of the
// dispatch thresholds; used to check the special-case collapse
double general_route_density(const FamilyParams& p, double x) {
  const PhiPair ph = solve_phi(p, x);
  const double s1 = std::sin(ph.phi1), s2 = std::sin(ph.phi2);
  const double s12 = std::sin(ph.phi1 + ph.phi2);
  return std::pow(s1, p.beta + 2.0) * std::pow(s12, p.alpha - p.beta - 1.0) /
         (kPi * std::pow(s2, p.alpha));
}

}  // namespace

TEST_CASE("family S-transform closed forms") {
  CHECK(family_s({1.0, 0.0}, -0.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(family_s({0.0, 1.0}, -0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(family_s({0.0, 0.0}, -0.3) == doctest::Approx(1.0));
  CHECK_THROWS_AS(family_s({1.0, 1.0}, 0.5), OutOfDomainError);
  CHECK_THROWS_AS(family_s({1.0, 1.0}, -1.0), OutOfDomainError);

  // multiplicative over parameter addition, exactly
  const FamilyParams p1{0.5, 1.5}, p2{1.25, 0.25};
  for (double z : {-0.9, -0.5, -0.01}) {
    const double prod = family_s(p1, z) * family_s(p2, z);
    CHECK(family_s({p1.alpha + p2.alpha, p1.beta + p2.beta}, z) ==
          doctest::Approx(prod).epsilon(1e-14));
  }
}

TEST_CASE("family moments from the Gamma-function formulas") {
  CHECK(family_moment({1.0, 0.0}, 0.0) == 1.0);
  CHECK(family_moment({1.0, 0.0}, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(family_moment({1.0, 0.0}, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(family_moment({1.0, 0.0}, 0.5) ==
        doctest::Approx(8.0 / (3.0 * kPi)).epsilon(1e-14));
  // mean of every free Bessel member is 1
  for (double a : {0.5, 2.0, 3.0})
    CHECK(family_moment({a, 0.0}, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
  // first moment diverges whenever beta > 0
  CHECK(std::isinf(family_moment({2.0, 1.0}, 1.0)));
  CHECK(std::isinf(family_moment({0.0, 0.5}, 1.0)));
  // outside the admissible range on the left
  CHECK(std::isinf(family_moment({1.0, 1.0}, -0.5)));
  // moment duality under parameter swap
  for (double g : {-0.2, 0.1, 0.3})
    CHECK(family_moment({1.5, 0.5}, g) ==
          doctest::Approx(family_moment({0.5, 1.5}, -g)).epsilon(1e-13));
}

TEST_CASE("family support endpoints") {
  auto [lo10, hi10] = family_support({1.0, 0.0});
  CHECK(lo10 == 0.0);
  CHECK(hi10 == doctest::Approx(4.0).epsilon(1e-15));
  auto [lo01, hi01] = family_support({0.0, 1.0});
  CHECK(lo01 == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(std::isinf(hi01));
  auto [lo23, hi23] = family_support({2.0, 3.0});
  CHECK(lo23 == 0.0);
  CHECK(std::isinf(hi23));
  CHECK_THROWS_AS(family_support({0.0, 0.0}), OutOfDomainError);
}

TEST_CASE("solve_phi finds the unique angle pair") {
  const PhiPair ph = solve_phi({1.0, 1.0}, 1.0);
  CHECK(ph.phi1 == doctest::Approx(kPi / 4.0).epsilon(1e-12));
  CHECK(ph.phi2 == doctest::Approx(kPi / 4.0).epsilon(1e-12));

  for (double x : {1e-6, 0.1, 1.0, 10.0, 1e6}) {
    for (FamilyParams p : {FamilyParams{2.0, 0.5}, FamilyParams{0.5, 3.0}}) {
      const PhiPair r = solve_phi(p, x);
      CHECK(std::abs((p.alpha + 1.0) * r.phi1 + (p.beta + 1.0) * r.phi2 - kPi) < 1e-12);
      const double u = std::pow(std::sin(r.phi2), p.alpha + 1.0) /
                       std::pow(std::sin(r.phi1), p.beta + 1.0) *
                       std::pow(std::sin(r.phi1 + r.phi2), p.beta - p.alpha);
      CHECK(u == doctest::Approx(x).epsilon(1e-10));
    }
  }
  // theta approaches the ends of (0, pi) with x
  CHECK(solve_phi({1.0, 1.0}, 1e-10).theta < 0.01);
  CHECK(solve_phi({1.0, 1.0}, 1e10).theta > kPi - 0.01);
}

TEST_CASE("density values at closed-form points") {
  CHECK(family_density({1.0, 1.0}, 1.0) ==
        doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-12));
  CHECK(family_density({1.0, 0.0}, 2.0) ==
        doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-12));
  CHECK(family_density({2.0, 2.0}, 1.0) ==
        doctest::Approx(std::sqrt(3.0) / (6.0 * kPi)).epsilon(1e-12));
  CHECK_THROWS_AS(family_density({1.0, 1.0}, 0.0), OutOfDomainError);
  CHECK_THROWS_AS(family_density({1.0, 1.0}, -2.0), OutOfDomainError);
  CHECK_THROWS_AS(family_density({0.0, 0.0}, 1.0), OutOfDomainError);
}

TEST_CASE("density matches the free Poisson law and its reciprocal") {
  for (double x : {0.05, 0.5, 1.0, 2.0, 3.5, 3.95}) {
    CHECK(family_density({1.0, 0.0}, x) == doctest::Approx(mp_density(x)).epsilon(1e-11));
  }
  for (double x : {0.3, 0.5, 1.0, 4.0, 25.0}) {
    CHECK(family_density({0.0, 1.0}, x) ==
          doctest::Approx(mp_reciprocal_density(x)).epsilon(1e-11));
  }
  // zero outside the support, small near the upper edge
  CHECK(family_density({1.0, 0.0}, 4.0) == 0.0);
  CHECK(family_density({1.0, 0.0}, 5.0) == 0.0);
  CHECK(family_density({0.0, 1.0}, 0.2) == 0.0);
  CHECK(family_density({1.0, 0.0}, 3.999999) < 1e-2);
}

TEST_CASE("the two printed density forms agree") {
  const std::vector<FamilyParams> ps = {{0.5, 0.5}, {1.0, 2.0}, {3.0, 0.25}, {2.0, 3.0}};
  for (const FamilyParams& p : ps) {
    for (int k = 0; k < 100; ++k) {
      const double x = std::exp(-6.0 + 12.0 * (k + 0.5) / 100.0);
      const PhiPair ph = solve_phi(p, x);
      const double f1 = family_density(p, x);
      const double f2 = std::sin(ph.phi1) * std::sin(ph.phi2) /
                        (kPi * x * std::sin(ph.phi1 + ph.phi2));
      CHECK(f1 == doctest::Approx(f2).epsilon(1e-10));
    }
  }
}

TEST_CASE("general solver collapses to the special-case formulas") {
  // equal parameters: closed form
  for (double a : {0.7, 1.0, 2.5}) {
    for (double x : {0.2, 0.8, 1.0, 3.0, 12.0}) {
      CHECK(family_density({a, a}, x) ==
            doctest::Approx(equal_param_density(a, x)).epsilon(1e-11));
    }
  }
  // beta = 0 and alpha = 0: the two-angle route evaluated at the boundary
  // parameters agrees with the dispatched single-angle formulas
  for (double x : {0.5, 1.5, 3.0}) {
    CHECK(general_route_density({1.5, 0.0}, x) ==
          doctest::Approx(family_density({1.5, 0.0}, x)).epsilon(1e-11));
  }
  for (double x : {0.5, 1.0, 8.0}) {
    CHECK(general_route_density({0.0, 2.0}, x) ==
          doctest::Approx(family_density({0.0, 2.0}, x)).epsilon(1e-11));
  }
}

TEST_CASE("limit CDF closed forms and the defining relation") {
  CHECK(family_limit_cdf({1.0, 0.0}, 0.3) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(family_limit_cdf({2.0, 0.0}, 0.49) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(family_limit_cdf({1.5, 1.5}, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  // Pareto form for alpha = 0
  CHECK(family_limit_cdf({0.0, 2.0}, 0.5) == 0.0);
  CHECK(family_limit_cdf({0.0, 2.0}, 8.0) ==
        doctest::Approx(1.0 - std::pow(8.0, -0.5)).epsilon(1e-14));
  // defining relation t^alpha / (1-t)^beta -> t for mixed parameters
  for (double t : {0.1, 0.4, 0.75}) {
    const double x = std::pow(t, 2.0) / std::pow(1.0 - t, 3.0);
    CHECK(family_limit_cdf({2.0, 3.0}, x) == doctest::Approx(t).epsilon(1e-12));
  }
}

TEST_CASE("closed-form limit CDFs agree with the generic transform route") {
  const LimitLaw ll = family_limit_law({2.0, 3.0});
  for (double x : {0.05, 0.4, 1.0, 7.0}) {
    CHECK(ll.cdf(x) == doctest::Approx(family_limit_cdf({2.0, 3.0}, x)).epsilon(1e-9));
  }
}

TEST_CASE("duality swaps parameters and inverts the density argument") {
  const FamilyParams d = family_dual({1.0, 0.0});
  CHECK(d.alpha == 0.0);
  CHECK(d.beta == 1.0);
  const std::vector<FamilyParams> ps = {{1.0, 0.0}, {0.5, 0.5}, {2.0, 1.0},
                                        {0.0, 2.0},  {3.0, 0.5}, {1.0, 1.0}};
  for (const FamilyParams& p : ps) {
    const FamilyParams q = family_dual(p);
    for (int k = 0; k < 50; ++k) {
      const double x = std::exp(-4.0 + 8.0 * (k + 0.5) / 50.0);
      const double lhs = family_density(q, x);
      const double rhs = family_density(p, 1.0 / x) / (x * x);
      CHECK(lhs == doctest::Approx(rhs).epsilon(2e-10));
    }
  }
}

TEST_CASE("family powers scale parameters and exponentiate S") {
  const FamilyParams p3 = family_power({1.0, 0.0}, 3.0);
  CHECK(p3.alpha == 3.0);
  CHECK(p3.beta == 0.0);
  const FamilyParams ph = family_power({1.0, 1.0}, 0.5);
  CHECK(ph.alpha == 0.5);
  CHECK(ph.beta == 0.5);
  const FamilyParams p{0.75, 1.25};
  for (double z : {-0.8, -0.3}) {
    CHECK(family_s(family_power(p, 2.0), z) ==
          doctest::Approx(family_s(p, z) * family_s(p, z)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(family_power(p, 0.0), std::invalid_argument);
}

TEST_CASE("sin-ratio integral identity") {
  // analytic limit at gamma = 0
  auto [l0, r0] = sin_ratio_integral_check(1.0, 0.0);
  CHECK(r0 == doctest::Approx(1.0 / kPi));
  CHECK(l0 == doctest::Approx(1.0 / kPi).epsilon(1e-10));

  auto [l1, r1] = sin_ratio_integral_check(kPi / 2.0, 0.5);
  CHECK(r1 == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
  CHECK(l1 == doctest::Approx(r1).epsilon(1e-10));

  auto [l2, r2] = sin_ratio_integral_check(0.0, 0.3);
  CHECK(l2 == 0.0);
  CHECK(r2 == doctest::Approx(0.0));

  for (double theta : {-2.5, -1.0, 0.4, 2.8}) {
    for (double gamma : {-0.7, -0.2, 0.5, 0.9}) {
      auto [lhs, rhs] = sin_ratio_integral_check(theta, gamma);
      CHECK(std::abs(lhs - rhs) < 1e-8);
    }
  }
}

TEST_CASE("theta engine: cdf, quantile and expectations") {
  const FamilyDistribution burr({1.0, 1.0});
  // F(x) = (2/pi) atan(sqrt(x)) for this member
  for (double x : {0.1, 1.0, 5.0}) {
    CHECK(burr.cdf(x) ==
          doctest::Approx(2.0 / kPi * std::atan(std::sqrt(x))).epsilon(1e-10));
  }
  for (double u : {0.05, 0.5, 0.93}) {
    CHECK(burr.cdf(burr.quantile(u)) == doctest::Approx(u).epsilon(1e-10));
  }

  const FamilyDistribution mp({1.0, 0.0});
  // CDF against direct quadrature of the density
  for (double x : {0.5, 1.0, 3.0}) {
    const auto oracle = integrate_interval_refined(
        [](double s, double) { return mp_density(s); }, 0.0, x);
    REQUIRE_FALSE(oracle.diverged);
    CHECK(mp.cdf(x) == doctest::Approx(oracle.value).epsilon(1e-9));
  }

  // moments through the theta substitution match the Gamma formulas
  for (FamilyParams p : {FamilyParams{1.0, 0.0}, FamilyParams{0.5, 1.5}}) {
    const FamilyDistribution dist(p);
    for (double g : {-0.2, 0.1, 0.35}) {
      const double closed = family_moment(p, g);
      if (std::isinf(closed)) continue;
      const double quad = dist.expectation([g](double x) { return std::pow(x, g); });
      CHECK(quad == doctest::Approx(closed).epsilon(1e-8));
    }
  }
  // divergent expectation reports infinity
  const FamilyDistribution heavy({1.0, 1.0});
  CHECK(std::isinf(heavy.expectation([](double x) { return x; })));
}

TEST_CASE("theta engine: reciprocal coupling between dual members") {
  const FamilyDistribution mp({1.0, 0.0});
  const FamilyDistribution rec({0.0, 1.0});
  for (double u : {0.2, 0.5, 0.8}) {
    CHECK(rec.quantile(u) == doctest::Approx(1.0 / mp.quantile(1.0 - u)).epsilon(1e-9));
  }
}

TEST_CASE("family measures integrate correctly") {
  const Measure m = family_measure({1.0, 0.0});
  CHECK(integrate(m, [](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(integrate(m, [](double x) { return x; }) == doctest::Approx(1.0).epsilon(1e-6));

  const Measure tab = FamilyDistribution({1.0, 0.0}).tabulated_measure();
  CHECK(tab.has_tabulated_quantile());
  CHECK(integrate(tab, [](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(integrate(tab, [](double x) { return x; }) == doctest::Approx(1.0).epsilon(1e-4));

  const MeanPair mp_ends = mean_and_inverse_mean(m);
  CHECK(mp_ends.b == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(mp_ends.a == 0.0);
}

TEST_CASE("sampling a family measure matches its cdf") {
  const FamilyDistribution mp({1.0, 0.0});
  const auto xs = sample(mp.measure(), 10000, 99);
  const double ks =
      ks_distance(EmpiricalDist(xs), [&](double x) { return mp.cdf(x); });
  CHECK(ks < 0.03);
}

TEST_CASE("panel doubling barely moves smooth family-table integrals") {
  const Measure tab = FamilyDistribution({1.0, 0.0}).tabulated_measure();
  auto f = [](double x) { return std::exp(-x); };
  CHECK(std::abs(integrate(tab, f, 16) - integrate(tab, f, 32)) < 1e-8);
  const Measure exact = family_measure({1.0, 0.0});
  CHECK(std::abs(integrate(exact, f, 16) - integrate(exact, f, 32)) < 1e-10);
}

TEST_CASE("family S-transform object carries exact limit-law endpoints") {
  const STransform st = family_stransform({1.0, 0.0});
  CHECK(st.delta() == 0.0);
  CHECK_FALSE(st.is_dirac());
  const auto [inf_s, sup_s] = st.image_endpoints();
  CHECK(inf_s == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::isinf(sup_s));
  for (double z : {-0.9, -0.5, -0.1})
    CHECK(st(z) == doctest::Approx(family_s({1.0, 0.0}, z)).epsilon(1e-14));

  const auto [i2, s2] = family_stransform({2.0, 3.0}).image_endpoints();
  CHECK(i2 == 0.0);
  CHECK(std::isinf(s2));

  // numeric transform of the exact-quantile measure approaches the closed form
  const STransform numeric = STransform::from_measure(family_measure({1.0, 0.0}));
  for (double z : {-0.7, -0.4, -0.15})
    CHECK(numeric(z) == doctest::Approx(family_s({1.0, 0.0}, z)).epsilon(1e-7));
}
