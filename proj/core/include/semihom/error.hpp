// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace semihom {

/// Malformed or out-of-contract input (dimension mismatch, bad file, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters that cannot produce a valid construction (e.g. a grid pool
/// that is too small for the requested level).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A condition number evaluated to infinity where a finite value is needed.
class SingularityError : public std::runtime_error {
 public:
  SingularityError(const std::string& what, std::vector<double> point,
                   double kappa)
      : std::runtime_error(what), point_(std::move(point)), kappa_(kappa) {}

  const std::vector<double>& point() const noexcept { return point_; }
  double kappa() const noexcept { return kappa_; }

 private:
  std::vector<double> point_;
  double kappa_;
};

/// A refinement loop hit its level/iteration cap.
class NonterminationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace semihom
