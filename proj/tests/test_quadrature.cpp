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

#include <doctest.h>

#include "freelln/quadrature.hpp"

using namespace freelln;

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  const auto& rule = gauss_legendre(8);
  CHECK(rule.nodes.size() == 8);
  double mass = 0.0, x14 = 0.0;
  for (int i = 0; i < 8; ++i) {
    mass += rule.weights[i];
    x14 += rule.weights[i] * std::pow(rule.nodes[i], 14);
  }
  CHECK(mass == doctest::Approx(2.0).epsilon(1e-14));
  // degree 14 < 2*8, exact up to roundoff: integral of x^14 over [-1,1]
  CHECK(x14 == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
}

TEST_CASE("uniform composite panels reach spectral accuracy on smooth integrands") {
  auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
  // antiderivative of e^{-x} cos(3x): e^{-x} (3 sin(3x) - cos(3x)) / 10
  auto antider = [](double x) {
    return std::exp(-x) * (3.0 * std::sin(3.0 * x) - std::cos(3.0 * x)) / 10.0;
  };
  const double exact = antider(2.0) - antider(0.0);
  const double got = integrate_uniform(f, 0.0, 2.0, 16);
  CHECK(got == doctest::Approx(exact).epsilon(1e-14));
  const double doubled = integrate_uniform(f, 0.0, 2.0, 32);
  CHECK(std::abs(doubled - got) < 1e-14);
}

TEST_CASE("refined engine reproduces the logistic log-moment integrals") {
  auto sq = [](double v) { return v * v; };

  const auto logit2 = integrate_unit_refined(
      [&](double t, double omt) { return sq(std::log(t / omt)); });
  REQUIRE_FALSE(logit2.diverged);
  CHECK(logit2.value == doctest::Approx(kPi * kPi / 3.0).epsilon(1e-12));

  const auto ln2 = integrate_unit_refined(
      [&](double t, double) { return sq(std::log(t)); });
  REQUIRE_FALSE(ln2.diverged);
  CHECK(ln2.value == doctest::Approx(2.0).epsilon(1e-12));

  const auto ln2m = integrate_unit_refined(
      [&](double, double omt) { return sq(std::log(omt)); });
  REQUIRE_FALSE(ln2m.diverged);
  CHECK(ln2m.value == doctest::Approx(2.0).epsilon(1e-12));

  const auto cross = integrate_unit_refined(
      [&](double t, double omt) { return std::log(t) * std::log(omt); });
  REQUIRE_FALSE(cross.diverged);
  CHECK(cross.value == doctest::Approx(2.0 - kPi * kPi / 6.0).epsilon(1e-12));
}

TEST_CASE("refined engine handles algebraic endpoint singularities") {
  const auto sqrt_inv = integrate_unit_refined(
      [](double t, double) { return 1.0 / std::sqrt(t); });
  REQUIRE_FALSE(sqrt_inv.diverged);
  CHECK(sqrt_inv.value == doctest::Approx(2.0).epsilon(1e-12));

  // Beta(1/4, 3/4) = pi / sin(pi/4)
  const auto beta = integrate_unit_refined([](double t, double omt) {
    return std::pow(t, -0.75) * std::pow(omt, -0.25);
  });
  REQUIRE_FALSE(beta.diverged);
  CHECK(beta.value == doctest::Approx(kPi / std::sin(kPi / 4.0)).epsilon(1e-10));
}

TEST_CASE("refined engine flags divergent integrals") {
  const auto harmonic = integrate_unit_refined(
      [](double t, double) { return 1.0 / t; });
  CHECK(harmonic.diverged);

  const auto strong = integrate_unit_refined(
      [](double t, double) { return std::pow(t, -1.5); });
  CHECK(strong.diverged);

  const auto at_one = integrate_unit_refined(
      [](double, double omt) { return 1.0 / omt; });
  CHECK(at_one.diverged);
}

TEST_CASE("interval-refined integration maps endpoints exactly") {
  // integral of 1/sqrt(pi - x) over (0, pi) = 2 sqrt(pi)
  const auto r = integrate_interval_refined(
      [](double, double b_minus_x) { return 1.0 / std::sqrt(b_minus_x); }, 0.0, kPi);
  REQUIRE_FALSE(r.diverged);
  CHECK(r.value == doctest::Approx(2.0 * std::sqrt(kPi)).epsilon(1e-12));
}
