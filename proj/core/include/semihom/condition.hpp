// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <span>

#include "semihom/polynomial.hpp"

namespace semihom {

/// Extended real in [1, +inf]; infinity is a legal value.
class ConditionValue {
 public:
  static constexpr double kInfinity = std::numeric_limits<double>::infinity();

  constexpr ConditionValue() = default;
  constexpr explicit ConditionValue(double v) : value_(v) {}
  static constexpr ConditionValue infinite() { return ConditionValue(kInfinity); }

  constexpr double value() const noexcept { return value_; }
  constexpr bool is_finite() const noexcept { return value_ < kInfinity; }
  /// 1/value with inf^{-1} = 0.
  constexpr double reciprocal() const noexcept { return is_finite() ? 1.0 / value_ : 0.0; }

  constexpr auto operator<=>(const ConditionValue&) const = default;

 private:
  double value_ = kInfinity;
};

/// Orthonormal basis of the tangent space x^perp at a unit vector x.
struct TangentFrame {
  Vec base;
  Mat basis;  ///< (n+1) x n, orthonormal columns orthogonal to base

  static TangentFrame at(const Vec& x);
};

/// Relative singular-value cutoff deciding numerical surjectivity.
inline constexpr double kRankTolerance = 1e-12;

/// ||T|| * ||DT(x)^+ Delta||; infinite when DT(x) is not surjective or T = 0.
ConditionValue mu_norm(std::span<const HomogeneousPolynomial> tuple, const Vec& x);

/// mu_norm of the restriction of T to the affine tangent space at x.
ConditionValue mu_proj(std::span<const HomogeneousPolynomial> tuple, const Vec& x);

/// Same as mu_proj but with a caller-supplied frame of x^perp.
ConditionValue mu_proj(std::span<const HomogeneousPolynomial> tuple, const TangentFrame& frame);

/// Real homogeneous condition number
///   (1/mu_proj^2 + ||T(x)||^2 / ||T||^2)^{-1/2}.
ConditionValue kappa(std::span<const HomogeneousPolynomial> tuple, const Vec& x);

/// Maximum of kappa(F^L, x) over subtuples L of G with q + |L| <= n+1,
/// excluding L = {} when q = 0.
ConditionValue kappa_semi(const SemialgebraicSystem& sys, const Vec& x);

struct LipschitzReport {
  std::size_t trials = 0;
  double max_excess = 0.0;  ///< max |1/k(x) - 1/k(y)| - D ||x - y||
  Vec worst_x;
  Vec worst_y;
  bool pass = false;  ///< max_excess <= 1e-9
};

/// Samples random pairs on S^n and measures how far 1/kappa_semi departs
/// from the D-Lipschitz bound.
LipschitzReport kappa_inv_lipschitz_check(const SemialgebraicSystem& sys,
                                          std::size_t trials, std::uint64_t seed);

/// r-relaxation membership: |f(x)| < ||f|| r for all f, g(x) > -||g|| r for all g.
bool approx_member(const SemialgebraicSystem& sys, double r, const Vec& x);

/// Throws InputError unless | ||x|| - 1 | <= 1e-10.
void require_unit(const Vec& x, const char* where);

}  // namespace semihom
