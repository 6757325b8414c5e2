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

#ifndef FREELLN_COMMON_HPP
#define FREELLN_COMMON_HPP

#include <limits>
#include <stdexcept>
#include <string>

namespace freelln {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Partial quadrature sums beyond this magnitude report an infinite
// extended-real result instead of a finite value.
inline constexpr double kDivergenceThreshold = 1e12;

// An integrand evaluated to NaN or infinity at a quadrature node or atom.
struct NonFiniteError : std::runtime_error {
  explicit NonFiniteError(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the open domain of the requested transform or density.
struct OutOfDomainError : std::domain_error {
  explicit OutOfDomainError(const std::string& what) : std::domain_error(what) {}
};

// An iterative solver exhausted its iteration budget or bracket range.
struct NoConvergenceError : std::runtime_error {
  explicit NoConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Operation undefined for Dirac (one-atom) input measures.
struct DiracInputError : std::domain_error {
  explicit DiracInputError(const std::string& what) : std::domain_error(what) {}
};

// A signed log-moment integral diverged.
struct DivergesError : std::runtime_error {
  explicit DivergesError(const std::string& what) : std::runtime_error(what) {}
};

// The Hermitian eigensolver failed to converge.
struct EigFailureError : std::runtime_error {
  explicit EigFailureError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace freelln

#endif  // FREELLN_COMMON_HPP
