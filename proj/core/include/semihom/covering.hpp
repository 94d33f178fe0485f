// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "semihom/condition.hpp"
#include "semihom/spheregrid.hpp"

namespace semihom {

/// min(1, scale / (360 (4D)^s D^{5/2} kappa^2)).
double radius_value(double kappa, unsigned max_degree, std::size_t num_inequalities, double scale);

/// x -> radius_value(kappa_semi(S, x), ...). Throws SingularityError where
/// kappa is infinite.
class RadiusFunction {
 public:
  RadiusFunction(const SemialgebraicSystem& sys, double scale);

  double operator()(const Vec& x) const;
  /// scale / (180 (4D)^s D^{3/2}), used as an upper bound.
  double lipschitz_constant() const noexcept { return lipschitz_; }
  double scale() const noexcept { return scale_; }
  /// 360 (4D)^s D^{5/2}.
  double denominator() const noexcept { return denominator_; }

 private:
  const SemialgebraicSystem* sys_;
  double scale_;
  double denominator_;
  double lipschitz_;
};

/// Radius 1 / (40 D^{3/2} kappa) of the homotopy-certified balls.
double nsw_radius(double kappa, unsigned max_degree);

struct WeightedBall {
  Vec center;
  double eps = 0.0;
  double kappa = 0.0;
  double cover_radius = 0.0;  ///< r_B of the generating cover ball
  int level = -1;
  std::size_t grid_index = kNoGridIndex;
};

struct CoveringCounters {
  int levels_used = 0;
  std::size_t f_evaluations = 0;
  std::vector<std::size_t> visited_per_level;
  std::vector<std::size_t> final_per_level;
  std::size_t divide_calls = 0;
  std::size_t max_divide = 0;
  std::size_t cover_balls = 0;
  std::size_t filter_passed = 0;
  std::size_t filter_rejected = 0;
  std::size_t thinned_away = 0;
};

struct WeightedBallSet {
  int n = 0;
  unsigned max_degree = 0;
  std::size_t num_inequalities = 0;
  double scale = 1.0;
  /// 0 at scale 1; otherwise eps is raised to at least this times r_B.
  double density_floor = 0.0;
  std::vector<WeightedBall> balls;
  CoveringCounters counters;
  /// Up to 64 rejected cover balls, kept for audits of the filter.
  std::vector<SphericalBall> rejected_sample;

  bool empty() const noexcept { return balls.empty(); }
};

struct CoveringParams {
  double scale = 1.0;
  GridParams grid;
  /// Drop balls whose density role is taken over by a larger ball.
  bool thin = true;
  /// Relaxed runs only: eps >= relaxed_density_floor * r_B, so that every
  /// point of a kept cover ball is inside a quarter of its eps.
  double relaxed_density_floor = 5.0;
};

/// `raw`, when given, receives the unfiltered cover.
WeightedBallSet covering(const SemialgebraicSystem& sys, const CoveringParams& params,
                         CoverOutput* raw = nullptr);

/// Greedy domination thinning: visiting balls by decreasing eps, y is
/// dropped when an already selected x satisfies
/// d_S(x, c_y) + r_y < eps(x) / 4. Output keeps the input order.
std::vector<WeightedBall> thin_balls(std::vector<WeightedBall> balls);

/// Projected Newton x <- normalize(x - J_A(x)^+ T_A(x)) where A holds F and
/// the currently violated g. Returns nullopt when the residual does not
/// reach tol within max_iter steps.
std::optional<Vec> project_to_set(const SemialgebraicSystem& sys, const Vec& start,
                                  double tol = 1e-12, int max_iter = 50);

/// Runs project_to_set from every kept center; failed starts are skipped.
std::vector<Vec> zero_samples(const SemialgebraicSystem& sys, const WeightedBallSet& w,
                              double tol = 1e-12, int max_iter = 50);

/// Largest of |f(x)| / ||f|| over F and -g(x) / ||g|| over G. Negative when
/// the point lies strictly inside every inequality and F is empty.
double normalized_residual(const SemialgebraicSystem& sys, const Vec& x);

enum class CheckStatus { pass, fail, not_applicable };

const char* to_string(CheckStatus s);

struct NSWCheckReport {
  bool c_bound_ok = true;
  bool approx_condition_ok = true;
  CheckStatus density = CheckStatus::not_applicable;
  /// max over balls of eps * 40 D^{3/2} kappa - 1 (<= 0 required).
  double worst_c_margin = 0.0;
  /// max over balls of residual * 13 (4D)^s D^{3/2} kappa^2 - 1 (< 0 required).
  double worst_approx_margin = 0.0;
  /// max over samples of min over balls of d_S(c, p) - eps / 4 (< 0 required).
  double worst_density_margin = 0.0;
  std::vector<std::size_t> c_violations;
  std::vector<std::size_t> approx_violations;
  std::vector<std::size_t> density_violations;  ///< sample indices
  std::size_t samples = 0;

  bool density_ok() const noexcept { return density != CheckStatus::fail; }
  bool all_ok() const noexcept { return c_bound_ok && approx_condition_ok && density == CheckStatus::pass; }
};

/// `tol` bounds the residual accepted for a zero sample; samples farther
/// off the set are rejected with InputError.
NSWCheckReport verify_nsw(const SemialgebraicSystem& sys, const WeightedBallSet& w,
                          std::span<const Vec> samples, double tol = 1e-9);

}  // namespace semihom
