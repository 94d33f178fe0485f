// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace semihom {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const noexcept { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

struct MinimizeResult {
  std::vector<Interval> intervals;  ///< final intervals (adaptive) or the minimizing cell
  double min_estimate = 0.0;
  double argmin = 0.0;
  std::size_t evaluations = 0;  ///< distinct points at which f was called
  int levels = 0;               ///< grid level k (nonadaptive) or max depth (adaptive)
};

using ScalarFunction = std::function<double(double)>;

/// Uniform dyadic grids on [0, 1], refined while some grid point x has
/// 2^{-k} >= eps f(x). eps must lie in (0, 1); throws NonterminationError
/// past level 40.
MinimizeResult minimize_nonadaptive(const ScalarFunction& f, double eps);

/// Breadth-first bisection: [c, d] is final once min(f(c), f(d)) eps >= d - c.
/// eps must lie in (0, 1]; throws NonterminationError past depth 60.
MinimizeResult minimize_adaptive(const ScalarFunction& f, Interval interval, double eps);

/// Demonstration functions for the CLI: "constant", "ramp", "vee", "hinge".
std::optional<ScalarFunction> builtin_scalar_function(std::string_view name);

}  // namespace semihom
