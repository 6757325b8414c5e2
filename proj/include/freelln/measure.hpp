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

#ifndef FREELLN_MEASURE_HPP
#define FREELLN_MEASURE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "freelln/common.hpp"
#include "freelln/quadrature.hpp"
#include "freelln/rng.hpp"
#include "freelln/roots.hpp"

namespace freelln {

struct Atom {
  double x;  // location, >= 0
  double w;  // mass, in (0,1]
};

// Strictly increasing map u -> x on a grid; evaluated by linear
// interpolation, clamped to the first/last tabulated location outside the
// tabulated range of u.
class QuantileTable {
 public:
  QuantileTable() = default;

  QuantileTable(std::vector<double> u, std::vector<double> x)
      : u_(std::move(u)), x_(std::move(x)) {
    if (u_.size() != x_.size() || u_.size() < 2)
      throw std::invalid_argument("quantile table needs >= 2 matching knots");
    for (std::size_t i = 0; i < u_.size(); ++i) {
      if (!(u_[i] > 0.0 && u_[i] < 1.0))
        throw std::invalid_argument("quantile table probabilities must lie in (0,1)");
      if (!(x_[i] >= 0.0) || !std::isfinite(x_[i]))
        throw std::invalid_argument("quantile table locations must be finite and >= 0");
      if (i > 0 && !(u_[i] > u_[i - 1] && x_[i] > x_[i - 1]))
        throw std::invalid_argument("quantile table must be strictly increasing in both coordinates");
    }
  }

  double operator()(double u) const {
    if (u <= u_.front()) return x_.front();
    if (u >= u_.back()) return x_.back();
    const auto it = std::upper_bound(u_.begin(), u_.end(), u);
    const std::size_t k = static_cast<std::size_t>(it - u_.begin());
    const double frac = (u - u_[k - 1]) / (u_[k] - u_[k - 1]);
    return x_[k - 1] + frac * (x_[k] - x_[k - 1]);
  }

  // Generalized inverse: fraction of continuous mass at or below x.
  double inverse(double x) const {
    if (x < x_.front()) return 0.0;
    if (x >= x_.back()) return 1.0;
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - x_.begin());
    const double frac = (x - x_[k - 1]) / (x_[k] - x_[k - 1]);
    return u_[k - 1] + frac * (u_[k] - u_[k - 1]);
  }

  const std::vector<double>& probabilities() const { return u_; }
  const std::vector<double>& locations() const { return x_; }
  bool empty() const { return u_.empty(); }

 private:
  std::vector<double> u_;
  std::vector<double> x_;
};

// A probability measure on [0,inf): a finite atom list plus an absolutely
// continuous part represented by its quantile function. The quantile backend
// is either a tabulated map (linear interpolation) or an exact callable.
// Instances are immutable after construction.
class Measure {
 public:
  static Measure dirac(double c) {
    Measure m;
    m.atoms_ = {{c, 1.0}};
    m.cont_mass_ = 0.0;
    m.validate();
    return m;
  }

  static Measure from_atoms(std::vector<Atom> atoms) {
    Measure m;
    m.atoms_ = std::move(atoms);
    m.cont_mass_ = 0.0;
    m.validate();
    return m;
  }

  static Measure from_quantile_table(std::vector<double> u, std::vector<double> x,
                                     double cont_mass = 1.0,
                                     std::vector<Atom> atoms = {}) {
    Measure m;
    m.atoms_ = std::move(atoms);
    m.cont_mass_ = cont_mass;
    m.table_ = QuantileTable(std::move(u), std::move(x));
    m.quantile_fn_ = {};
    m.validate();
    return m;
  }

  // Exact quantile backend; `fn` must be nondecreasing on (0,1) with
  // nonnegative values.
  static Measure from_quantile_fn(std::function<double(double)> fn,
                                  double cont_mass = 1.0,
                                  std::vector<Atom> atoms = {}) {
    Measure m;
    m.atoms_ = std::move(atoms);
    m.cont_mass_ = cont_mass;
    m.quantile_fn_ = std::move(fn);
    m.validate();
    return m;
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  double cont_mass() const { return cont_mass_; }
  bool has_continuous_part() const { return cont_mass_ > 0.0; }
  bool is_dirac() const { return cont_mass_ == 0.0 && atoms_.size() == 1; }

  // delta = mu({0})
  double mass_at_zero() const {
    for (const Atom& a : atoms_)
      if (a.x == 0.0) return a.w;
    return 0.0;
  }

  // Quantile of the continuous part; u is clamped to representable
  // resolution at the ends.
  double quantile(double u) const {
    const double uc = std::min(std::max(u, 0x1.0p-120), 1.0 - 0x1.0p-53);
    if (quantile_fn_) return quantile_fn_(uc);
    return table_(uc);
  }

  bool has_tabulated_quantile() const { return !table_.empty(); }
  const QuantileTable& quantile_table() const { return table_; }

  // Full CDF including atoms.
  double cdf(double x) const {
    double f = 0.0;
    for (const Atom& a : atoms_)
      if (a.x <= x) f += a.w;
    if (cont_mass_ > 0.0) f += cont_mass_ * continuous_cdf(x);
    return f;
  }

  // Image measure under x -> c*x, c > 0.
  Measure scaled(double c) const {
    if (!(c > 0.0)) throw std::invalid_argument("scaling factor must be positive");
    Measure m;
    m.atoms_ = atoms_;
    for (Atom& a : m.atoms_) a.x *= c;
    m.cont_mass_ = cont_mass_;
    if (quantile_fn_) {
      auto base = quantile_fn_;
      m.quantile_fn_ = [base, c](double u) { return c * base(u); };
    } else if (!table_.empty()) {
      std::vector<double> xs = table_.locations();
      for (double& x : xs) x *= c;
      m.table_ = QuantileTable(table_.probabilities(), std::move(xs));
    }
    m.validate();
    return m;
  }

 private:
  double continuous_cdf(double x) const {
    if (!quantile_fn_) return table_.inverse(x);
    // invert the callable quantile by bisection
    const double lo = 0x1.0p-100, hi = 1.0 - 0x1.0p-53;
    if (x < quantile(lo)) return 0.0;
    if (x >= quantile(hi)) return 1.0;
    auto q = [this](double u) { return quantile(u); };
    return bisect_monotone(q, lo, hi, x).x;
  }

  void validate() const {
    double mass = cont_mass_;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      const Atom& a = atoms_[i];
      if (!(a.x >= 0.0) || !std::isfinite(a.x))
        throw std::invalid_argument("atom locations must be finite and >= 0");
      if (!(a.w > 0.0 && a.w <= 1.0))
        throw std::invalid_argument("atom masses must lie in (0,1]");
      for (std::size_t j = i + 1; j < atoms_.size(); ++j)
        if (atoms_[j].x == a.x)
          throw std::invalid_argument("atom locations must be distinct");
      mass += a.w;
    }
    if (std::abs(mass - 1.0) > 1e-12)
      throw std::invalid_argument("atom masses plus continuous mass must sum to 1");
    if (!(cont_mass_ >= 0.0 && cont_mass_ <= 1.0))
      throw std::invalid_argument("continuous mass must lie in [0,1]");
    if (cont_mass_ > 0.0 && table_.empty() && !quantile_fn_)
      throw std::invalid_argument("continuous mass requires a quantile backend");
    if (mass_at_zero() >= 1.0)
      throw std::invalid_argument("the atom at 0 must have mass < 1");
  }

  std::vector<Atom> atoms_;
  double cont_mass_ = 0.0;
  QuantileTable table_;
  std::function<double(double)> quantile_fn_;

  Measure() = default;
};

// integral of f over [0,inf) against m: atom sum plus cont_mass times the
// quantile-scale integral with fixed-order Gauss-Legendre panels.
// Deterministic for a fixed panel count.
template <class F>
double integrate(const Measure& m, F&& f, int panels = -1,
                 int nodes = kDefaultNodesPerPanel) {
  if (panels < 1) panels = default_panel_count();
  double sum = 0.0;
  for (const Atom& a : m.atoms()) {
    const double v = f(a.x);
    if (!std::isfinite(v))
      throw NonFiniteError("integrand non-finite at atom x=" + std::to_string(a.x));
    sum += a.w * v;
  }
  if (m.has_continuous_part()) {
    auto g = [&](double u) {
      const double v = f(m.quantile(u));
      if (!std::isfinite(v))
        throw NonFiniteError("integrand non-finite at quadrature node u=" + std::to_string(u));
      return v;
    };
    sum += m.cont_mass() * integrate_uniform(g, 0.0, 1.0, panels, nodes);
  }
  return sum;
}

// (b, a) of the limit-law support: b = mean (possibly infinite), a = inverse
// of the x^-1 integral, 0 when that integral diverges or mu({0}) > 0.
struct MeanPair {
  double b;  // integral of x
  double a;  // (integral of 1/x)^-1
};

inline MeanPair mean_and_inverse_mean(const Measure& m) {
  double mean_atoms = 0.0;
  double inv_atoms = 0.0;
  bool zero_atom = false;
  for (const Atom& at : m.atoms()) {
    mean_atoms += at.w * at.x;
    if (at.x == 0.0)
      zero_atom = true;
    else
      inv_atoms += at.w / at.x;
  }
  double b = mean_atoms;
  double inv = inv_atoms;
  if (m.has_continuous_part()) {
    auto fx = [&](double u, double) { return m.quantile(u); };
    const RefinedIntegral mi = integrate_unit_refined(fx);
    if (mi.diverged)
      b = kInf;
    else
      b += m.cont_mass() * mi.value;
    auto finv = [&](double u, double) {
      const double q = m.quantile(u);
      return q > 0.0 ? 1.0 / q : kDivergenceThreshold * 2.0;
    };
    const RefinedIntegral ii = integrate_unit_refined(finv);
    if (ii.diverged)
      inv = kInf;
    else
      inv += m.cont_mass() * ii.value;
  }
  const double a = (zero_atom || std::isinf(inv)) ? 0.0 : (inv > 0.0 ? 1.0 / inv : kInf);
  return {b, a};
}

// One inverse-CDF draw from an external stream. Atoms are stacked ahead of
// the continuous part in the composition.
inline double draw(const Measure& m, Xoshiro256pp& rng) {
  double u = rng.uniform();
  for (const Atom& a : m.atoms()) {
    if (u < a.w) return a.x;
    u -= a.w;
  }
  if (m.has_continuous_part()) return m.quantile(u / m.cont_mass());
  return m.atoms().back().x;  // rounding leak past the last atom band
}

// Inverse-CDF sampling, deterministic given the seed.
inline std::vector<double> sample(const Measure& m, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample count must be >= 1");
  Xoshiro256pp rng(seed);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(draw(m, rng));
  return out;
}

// Nonempty, sorted sample vector; holds rescaled spectra for comparison
// against a reference law.
class EmpiricalDist {
 public:
  explicit EmpiricalDist(std::vector<double> samples) : samples_(std::move(samples)) {
    if (samples_.empty()) throw std::invalid_argument("empirical distribution must be nonempty");
    if (!std::is_sorted(samples_.begin(), samples_.end()))
      std::sort(samples_.begin(), samples_.end());
    if (samples_.front() < 0.0)
      throw std::invalid_argument("empirical samples must be >= 0");
  }

  const std::vector<double>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }

 private:
  std::vector<double> samples_;
};

// sup |F_emp - F| over the sample points, using both the left and right
// limits of the reference CDF so that reference atoms are scored correctly.
template <class Cdf>
double ks_distance(const EmpiricalDist& e, Cdf&& cdf) {
  const auto& xs = e.samples();
  const double n = static_cast<double>(xs.size());
  double dist = 0.0;
  std::size_t i = 0;
  while (i < xs.size()) {
    std::size_t j = i;
    while (j < xs.size() && xs[j] == xs[i]) ++j;
    const double before = static_cast<double>(i) / n;
    const double after = static_cast<double>(j) / n;
    const double f_left = cdf(std::nextafter(xs[i], -kInf));
    const double f_right = cdf(xs[i]);
    dist = std::max(dist, std::abs(f_left - before));
    dist = std::max(dist, std::abs(f_right - after));
    i = j;
  }
  return dist;
}

}  // namespace freelln

#endif  // FREELLN_MEASURE_HPP
