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

#ifndef FREELLN_RMT_HPP
#define FREELLN_RMT_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <future>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "freelln/common.hpp"
#include "freelln/family.hpp"
#include "freelln/limit_law.hpp"
#include "freelln/measure.hpp"
#include "freelln/rng.hpp"
#include "freelln/transforms.hpp"

namespace freelln {

// Monte Carlo configuration: conjugated positive matrices model the n-fold
// free multiplicative power of `source` at dimension `dim`.
struct McConfig {
  int dim = 256;
  int n_factors = 1;
  int trials = 10;
  std::uint64_t seed = 0;
  std::variant<Measure, FamilyParams> source = FamilyParams{1.0, 0.0};
};

// Eigenvalues of one trial, ascending, with trial metadata. `max_clip` is
// the magnitude of the most negative raw eigenvalue (clipped to 0).
struct SpectralSample {
  std::vector<double> eigenvalues;
  int dim = 0;
  int n_factors = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  double max_clip = 0.0;
};

// Haar-distributed unitary: complex Ginibre, QR, then the phase-of-diagonal
// correction that makes the factorization unique.
inline Eigen::MatrixXcd haar_unitary(int dim, Xoshiro256pp& rng) {
  if (dim < 1) throw std::invalid_argument("haar_unitary: dim must be >= 1");
  Eigen::MatrixXcd z(dim, dim);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) {
      const auto [re, im] = rng.normal_pair();
      z(i, j) = std::complex<double>(re * inv_sqrt2, im * inv_sqrt2);
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd u = qr.householderQ();
  const Eigen::MatrixXcd& qr_mat = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const std::complex<double> r = qr_mat(j, j);
    const double mag = std::abs(r);
    if (mag > 0.0) u.col(j) *= r / mag;
  }
  return u;
}

namespace detail {

inline Measure resolve_source(const McConfig& cfg) {
  if (std::holds_alternative<Measure>(cfg.source))
    return std::get<Measure>(cfg.source);
  return family_measure(std::get<FamilyParams>(cfg.source));
}

}  // namespace detail

// Eigenvalues of (M_k ... M_1)^* (M_k ... M_1) for Hermitian PSD factors,
// ascending. The running product is renormalized by its largest column norm
// every few multiplications and the accumulated scale is restored on the
// eigenvalues, so long factor chains cannot overflow.
inline std::vector<double> spectrum_of_product(
    const std::vector<Eigen::MatrixXcd>& factors, double* max_clip_out = nullptr) {
  if (factors.empty()) throw std::invalid_argument("spectrum_of_product: no factors");
  const auto dim = factors.front().rows();
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Identity(dim, dim);
  double log_scale = 0.0;
  int since_rescale = 0;
  for (const Eigen::MatrixXcd& m : factors) {
    b = m * b;
    if (++since_rescale == 4) {
      since_rescale = 0;
      const double s = b.colwise().norm().maxCoeff();
      if (s > 0.0) {
        b /= s;
        log_scale += std::log(s);
      }
    }
  }
  Eigen::MatrixXcd h = b.adjoint() * b;
  h = 0.5 * (h + h.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success)
    throw EigFailureError("spectrum_of_product: Hermitian eigensolver failed");
  const double scale = std::exp(2.0 * log_scale);
  std::vector<double> eigs(static_cast<std::size_t>(dim));
  double max_clip = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    double v = solver.eigenvalues()[i] * scale;
    if (v < 0.0) {
      max_clip = std::max(max_clip, -v);
      v = 0.0;
    }
    eigs[static_cast<std::size_t>(i)] = v;
  }
  if (max_clip_out) *max_clip_out = max_clip;
  return eigs;
}

// One trial: draws M_i = U_i diag(sqrt(x)) U_i^* with x from the source and
// fresh Haar conjugations, then the spectrum of the n-fold product. Each
// trial owns the stream derived from (seed, trial).
inline SpectralSample product_spectrum(const McConfig& cfg, int trial) {
  if (cfg.dim < 2) throw std::invalid_argument("product_spectrum: dim must be >= 2");
  if (cfg.n_factors < 1)
    throw std::invalid_argument("product_spectrum: n_factors must be >= 1");
  const Measure source = detail::resolve_source(cfg);
  Xoshiro256pp rng = Xoshiro256pp::stream(cfg.seed, static_cast<std::uint64_t>(trial));
  std::vector<Eigen::MatrixXcd> factors;
  factors.reserve(static_cast<std::size_t>(cfg.n_factors));
  for (int i = 0; i < cfg.n_factors; ++i) {
    Eigen::VectorXd roots(cfg.dim);
    for (int k = 0; k < cfg.dim; ++k) roots[k] = std::sqrt(draw(source, rng));
    const Eigen::MatrixXcd u = haar_unitary(cfg.dim, rng);
    factors.push_back(u * roots.asDiagonal() * u.adjoint());
  }
  SpectralSample s;
  s.eigenvalues = spectrum_of_product(factors, &s.max_clip);
  s.dim = cfg.dim;
  s.n_factors = cfg.n_factors;
  s.trial = trial;
  s.seed = cfg.seed;
  return s;
}

// The law-of-large-numbers rescaling x -> x^{1/n}, order preserved.
inline EmpiricalDist nth_root_rescale(const SpectralSample& s) {
  std::vector<double> out;
  out.reserve(s.eigenvalues.size());
  const double inv_n = 1.0 / static_cast<double>(s.n_factors);
  for (double v : s.eigenvalues) out.push_back(std::pow(v, inv_n));
  return EmpiricalDist(std::move(out));
}

// Samples within atol of a reference atom are replaced by the atom location,
// so that sup-distance comparisons against atomic laws are not poisoned by
// eigenvalue roundoff.
inline EmpiricalDist snap_to_atoms(const EmpiricalDist& e, const Measure& reference,
                                   double atol = 1e-9) {
  std::vector<double> out = e.samples();
  for (double& v : out)
    for (const Atom& a : reference.atoms())
      if (std::abs(v - a.x) <= atol * std::max(1.0, a.x)) v = a.x;
  return EmpiricalDist(std::move(out));
}

struct TrialStat {
  int trial = 0;
  double ks = 0.0;
};

struct ConvergenceReport {
  int dim = 0;
  int n_factors = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<TrialStat> per_trial;
  double ks_mean = 0.0;
  double ks_max = 0.0;
  // (t, pooled fixed-point identity residual)
  std::vector<std::pair<double, double>> residuals;
};

// Runs `trials` independent product-spectrum trials in parallel, scores each
// rescaled spectrum against the reference CDF, and evaluates the fixed-point
// identity on the pooled samples. Deterministic for a fixed config.
template <class Cdf>
ConvergenceReport lln_convergence_report(const McConfig& cfg, Cdf&& reference_cdf,
                                         const STransform* source_transform = nullptr) {
  if (cfg.trials < 5)
    throw std::invalid_argument("lln_convergence_report: need at least 5 trials");
  std::vector<std::future<SpectralSample>> futures;
  futures.reserve(static_cast<std::size_t>(cfg.trials));
  for (int t = 0; t < cfg.trials; ++t)
    futures.push_back(
        std::async(std::launch::async, [&cfg, t] { return product_spectrum(cfg, t); }));

  ConvergenceReport rep;
  rep.dim = cfg.dim;
  rep.n_factors = cfg.n_factors;
  rep.trials = cfg.trials;
  rep.seed = cfg.seed;
  std::vector<double> pooled;
  pooled.reserve(static_cast<std::size_t>(cfg.trials) * cfg.dim);
  for (int t = 0; t < cfg.trials; ++t) {
    const SpectralSample s = futures[static_cast<std::size_t>(t)].get();
    const EmpiricalDist e = nth_root_rescale(s);
    const double ks = ks_distance(e, reference_cdf);
    rep.per_trial.push_back({t, ks});
    rep.ks_mean += ks;
    rep.ks_max = std::max(rep.ks_max, ks);
    pooled.insert(pooled.end(), e.samples().begin(), e.samples().end());
  }
  rep.ks_mean /= static_cast<double>(cfg.trials);
  if (source_transform) {
    const EmpiricalDist all(std::move(pooled));
    for (double t : {0.25, 0.5, 0.75}) {
      if (t <= source_transform->delta()) continue;
      rep.residuals.emplace_back(
          t, lln_identity_residual(*source_transform, all, cfg.n_factors, t));
    }
  }
  return rep;
}

}  // namespace freelln

#endif  // FREELLN_RMT_HPP
