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

#include "freelln/measure.hpp"
#include "freelln/transforms.hpp"

using namespace freelln;

namespace {

Measure two_atom() { return Measure::from_atoms({{1.0, 0.5}, {2.0, 0.5}}); }

// closed-form chi for w1 d_{x1} + w2 d_{x2}: psi(u) = z reduces to a
// quadratic in u whose negative root is chi(z)
double two_atom_chi(double w1, double x1, double w2, double x2, double z) {
  const double m = w1 * x1 + w2 * x2;
  const double qa = (z + 1.0) * x1 * x2;
  const double qb = -(z * (x1 + x2) + m);
  const double qc = z;
  const double disc = qb * qb - 4.0 * qa * qc;
  return (-qb - std::sqrt(disc)) / (2.0 * qa);
}

double two_atom_s(double w1, double x1, double w2, double x2, double z) {
  return (z + 1.0) / z * two_atom_chi(w1, x1, w2, x2, z);
}

std::vector<double> z_grid(double delta, int count) {
  std::vector<double> zs;
  const double lo = delta - 1.0 + 1e-6, hi = -1e-6;
  for (int k = 0; k < count; ++k)
    zs.push_back(lo + (hi - lo) * (k + 0.5) / count);
  return zs;
}

}  // namespace

TEST_CASE("psi matches closed forms on atomic measures") {
  const Measure d1 = Measure::dirac(1.0);
  CHECK(psi(d1, -1.0) == doctest::Approx(-0.5).epsilon(1e-15));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(psi(two_atom(), -inv_sqrt2) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(std::abs(psi(two_atom(), -1e-8)) < 1e-6);
  CHECK_THROWS_AS(psi(d1, 0.5), OutOfDomainError);
}

TEST_CASE("psi_prime matches closed forms and finite differences") {
  CHECK(psi_prime(Measure::dirac(1.0), -1.0) == doctest::Approx(0.25).epsilon(1e-15));
  const double c = 3.0;
  CHECK(psi_prime(Measure::dirac(c), -1.0) ==
        doctest::Approx(c / ((1.0 + c) * (1.0 + c))).epsilon(1e-15));
  CHECK(psi_prime(two_atom(), -1.0) == doctest::Approx(17.0 / 72.0).epsilon(1e-15));

  const Measure u = Measure::from_quantile_fn([](double v) { return v + 0.5; });
  for (double x : {-3.0, -1.0, -0.25}) {
    const double h = 1e-6 * std::abs(x);
    const double fd = (psi(u, x + h) - psi(u, x - h)) / (2.0 * h);
    CHECK(psi_prime(u, x) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("chi inverts psi") {
  CHECK(chi(Measure::dirac(1.0), -0.5) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(chi(two_atom(), -0.5) == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-12));

  for (double u : {-10.0, -1.0, -0.01}) {
    const double z = psi(two_atom(), u);
    CHECK(chi(two_atom(), z) == doctest::Approx(u).epsilon(1e-9));
  }
  CHECK_THROWS_AS(chi(two_atom(), 0.1), OutOfDomainError);
  CHECK_THROWS_AS(chi(two_atom(), -1.5), OutOfDomainError);
}

TEST_CASE("chi reports bracket exhaustion beyond the expansion cap") {
  // With mass at x = 0.1, psi(-1e16) is still about 5e-16 above -1, so the
  // representable z closest to -1 cannot be bracketed within the cap.
  const Measure m = Measure::from_atoms({{0.1, 0.5}, {2.0, 0.5}});
  CHECK_THROWS_AS(chi(m, std::nextafter(-1.0, 0.0)), NoConvergenceError);
}

TEST_CASE("s_eval on Dirac and two-atom sources") {
  for (double c : {0.5, 1.0, 4.0}) {
    const STransform st = STransform::from_measure(Measure::dirac(c));
    CHECK(st.is_dirac());
    for (double z : {-0.9, -0.5, -0.1})
      CHECK(st(z) == doctest::Approx(1.0 / c).epsilon(1e-12));
    CHECK_THROWS_AS(st.image_endpoints(), DiracInputError);
  }

  const STransform st = STransform::from_measure(two_atom());
  CHECK(st(-0.5) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  for (double z : z_grid(0.0, 25))
    CHECK(st(z) == doctest::Approx(two_atom_s(0.5, 1.0, 0.5, 2.0, z)).epsilon(1e-11));
}

TEST_CASE("round-trip inverse consistency on a fine grid") {
  const std::vector<Measure> sources = {
      Measure::dirac(2.0), two_atom(),
      Measure::from_atoms({{0.2, 0.25}, {1.0, 0.25}, {3.0, 0.5}})};
  for (const Measure& m : sources) {
    for (double z : z_grid(0.0, 100)) {
      const double u = chi(m, z);
      const double back = psi(m, u);
      CHECK(std::abs(back - z) <= 1e-10 * std::abs(z));
    }
  }
}

TEST_CASE("S is strictly decreasing and stays inside its image interval") {
  const STransform st = STransform::from_measure(two_atom());
  const auto [inf_s, sup_s] = st.image_endpoints();
  CHECK(inf_s == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(sup_s == doctest::Approx(0.75).epsilon(1e-12));
  double prev = kInf;
  for (double z : z_grid(0.0, 100)) {
    const double s = st(z);
    CHECK(s < prev);
    CHECK(s > inf_s);
    CHECK(s < sup_s);
    prev = s;
  }
}

TEST_CASE("the cache is monotone and constant exactly for Dirac sources") {
  const STransform dirac = STransform::from_measure(Measure::dirac(2.0));
  double lo = kInf, hi = -kInf;
  for (const auto& [z, s] : dirac.cache()) {
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  CHECK(hi - lo < 1e-10);

  const STransform ta = STransform::from_measure(two_atom());
  for (std::size_t i = 1; i < ta.cache().size(); ++i)
    CHECK(ta.cache()[i].second < ta.cache()[i - 1].second);
}

TEST_CASE("scaling the measure scales S inversely") {
  const double c = 2.5;
  const STransform st = STransform::from_measure(two_atom());
  const STransform stc = STransform::from_measure(two_atom().scaled(c));
  for (double z : z_grid(0.0, 20))
    CHECK(stc(z) == doctest::Approx(st(z) / c).epsilon(1e-9));
}

TEST_CASE("an atom at zero truncates the domain and blows up S at the edge") {
  const Measure m = Measure::from_atoms({{0.0, 0.3}, {2.0, 0.7}});
  const STransform st = STransform::from_measure(m);
  CHECK(st.delta() == doctest::Approx(0.3));
  CHECK_THROWS_AS(st(-0.8), OutOfDomainError);
  CHECK(st(-0.699) > st(-0.5));
  CHECK(st(-0.6999) > 100.0);
  const auto [inf_s, sup_s] = st.image_endpoints();
  CHECK(std::isinf(sup_s));
  CHECK(inf_s == doctest::Approx(1.0 / 1.4).epsilon(1e-12));
}

TEST_CASE("s_eval domain errors") {
  const STransform st = STransform::from_measure(two_atom());
  CHECK_THROWS_AS(st(0.0), OutOfDomainError);
  CHECK_THROWS_AS(st(-1.0), OutOfDomainError);
  CHECK_THROWS_AS(st(0.3), OutOfDomainError);
}
