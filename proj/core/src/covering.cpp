// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#include "semihom/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "semihom/error.hpp"
#include "semihom/parallel.hpp"

namespace semihom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double four_d_pow(unsigned max_degree, std::size_t num_inequalities) {
  return std::pow(4.0 * max_degree, static_cast<double>(num_inequalities));
}

std::vector<double> to_std(const Vec& x) { return std::vector<double>(x.data(), x.data() + x.size()); }

}  // namespace

double radius_value(double kappa, unsigned max_degree, std::size_t num_inequalities, double scale) {
  if (!(kappa < kInf)) return 0.0;
  const double d = max_degree;
  const double denom = 360.0 * four_d_pow(max_degree, num_inequalities) * std::pow(d, 2.5);
  return std::min(1.0, scale / (denom * kappa * kappa));
}

RadiusFunction::RadiusFunction(const SemialgebraicSystem& sys, double scale)
    : sys_(&sys), scale_(scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw InputError("radius_function: scale must be > 0");
  const double d = sys.max_degree();
  const double pow4d = four_d_pow(sys.max_degree(), sys.s());
  denominator_ = 360.0 * pow4d * std::pow(d, 2.5);
  lipschitz_ = scale / (180.0 * pow4d * std::pow(d, 1.5));
}

double RadiusFunction::operator()(const Vec& x) const {
  const ConditionValue k = kappa_semi(*sys_, x);
  if (!k.is_finite())
    throw SingularityError("kappa(F,G,x) is infinite; the covering guarantee does not apply",
                           to_std(x), k.value());
  return std::min(1.0, scale_ / (denominator_ * k.value() * k.value()));
}

double nsw_radius(double kappa, unsigned max_degree) {
  return 1.0 / (40.0 * std::pow(static_cast<double>(max_degree), 1.5) * kappa);
}

WeightedBallSet covering(const SemialgebraicSystem& sys, const CoveringParams& params,
                         CoverOutput* raw) {
  if (sys.q() > static_cast<std::size_t>(sys.n()))
    throw InputError("covering: needs q <= n (got q = " + std::to_string(sys.q()) + ")");
  if (!(params.relaxed_density_floor > 4.0))
    throw InputError("covering: relaxed_density_floor must exceed 4");
  const RadiusFunction f(sys, params.scale);
  GridHierarchy grids(sys.n(), params.grid);
  CoverOutput cov = cover(std::cref(f), f.lipschitz_constant(), grids);

  WeightedBallSet out;
  out.n = sys.n();
  out.max_degree = sys.max_degree();
  out.num_inequalities = sys.s();
  out.scale = params.scale;
  out.density_floor = params.scale == 1.0 ? 0.0 : params.relaxed_density_floor;

  const double sqrt_d = std::sqrt(static_cast<double>(sys.max_degree()));
  std::vector<char> keep(cov.balls.size(), 0);
  std::vector<double> kappas(cov.balls.size(), 0.0);
  detail::parallel_for(cov.balls.size(), params.grid.threads, [&](std::size_t i) {
    const SphericalBall& b = cov.balls[i];
    if (!approx_member(sys, sqrt_d * b.radius, b.center)) return;
    keep[i] = 1;
    kappas[i] = kappa_semi(sys, b.center).value();
  });

  std::vector<WeightedBall> kept;
  for (std::size_t i = 0; i < cov.balls.size(); ++i) {
    const SphericalBall& b = cov.balls[i];
    if (!keep[i]) {
      if (out.rejected_sample.size() < 64) out.rejected_sample.push_back(b);
      continue;
    }
    if (!(kappas[i] < kInf))
      throw SingularityError("kappa(F,G,x) is infinite at a kept center", to_std(b.center), kappas[i]);
    const double eps = std::max(nsw_radius(kappas[i], sys.max_degree()), out.density_floor * b.radius);
    kept.push_back(WeightedBall{b.center, eps, kappas[i], b.radius, b.level, b.index});
  }

  CoveringCounters& c = out.counters;
  c.levels_used = cov.levels_used;
  c.f_evaluations = cov.f_evaluations;
  c.visited_per_level = cov.visited_per_level;
  c.final_per_level = cov.final_per_level;
  c.divide_calls = cov.divide_calls;
  c.max_divide = cov.max_divide;
  c.cover_balls = cov.balls.size();
  c.filter_passed = kept.size();
  c.filter_rejected = cov.balls.size() - kept.size();
  out.balls = params.thin ? thin_balls(std::move(kept)) : std::move(kept);
  c.thinned_away = c.filter_passed - out.balls.size();
  if (raw) *raw = std::move(cov);
  return out;
}

std::vector<WeightedBall> thin_balls(std::vector<WeightedBall> balls) {
  if (balls.size() < 2) return balls;
  const Eigen::Index dim = balls[0].center.size();
  double max_eps = 0.0;
  for (const auto& b : balls) max_eps = std::max(max_eps, b.eps);
  const double reach = chord_for_geodesic(0.25 * max_eps);

  std::vector<std::size_t> order(balls.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return balls[a].eps > balls[b].eps; });

  PointIndex selected(static_cast<int>(dim), std::max(reach, 1e-9));
  std::vector<std::size_t> selected_ids;
  std::vector<char> keep(balls.size(), 0);
  for (std::size_t i : order) {
    const WeightedBall& y = balls[i];
    bool dominated = false;
    selected.for_each_within(y.center, reach, [&](std::uint32_t id, double) {
      if (dominated) return;
      const WeightedBall& x = balls[selected_ids[id]];
      if (geodesic_distance(x.center, y.center) + y.cover_radius < 0.25 * x.eps) dominated = true;
    });
    if (dominated) continue;
    keep[i] = 1;
    selected.insert(y.center);
    selected_ids.push_back(i);
  }
  std::vector<WeightedBall> out;
  out.reserve(selected_ids.size());
  for (std::size_t i = 0; i < balls.size(); ++i)
    if (keep[i]) out.push_back(std::move(balls[i]));
  return out;
}

double normalized_residual(const SemialgebraicSystem& sys, const Vec& x) {
  double worst = -kInf;
  for (std::size_t i = 0; i < sys.q(); ++i)
    worst = std::max(worst, std::abs(sys.equalities()[i].evaluate(x)) / sys.equality_norms()[i]);
  for (std::size_t j = 0; j < sys.s(); ++j)
    worst = std::max(worst, -sys.inequalities()[j].evaluate(x) / sys.inequality_norms()[j]);
  return worst;
}

std::optional<Vec> project_to_set(const SemialgebraicSystem& sys, const Vec& start, double tol,
                                  int max_iter) {
  Vec x = start.normalized();
  const Eigen::Index dim = x.size();
  for (int it = 0;; ++it) {
    if (normalized_residual(sys, x) <= tol) return x;
    if (it == max_iter) return std::nullopt;
    std::vector<const HomogeneousPolynomial*> active;
    for (const auto& f : sys.equalities()) active.push_back(&f);
    for (const auto& g : sys.inequalities())
      if (g.evaluate(x) < 0.0) active.push_back(&g);
    Mat j(static_cast<Eigen::Index>(active.size()), dim);
    Vec v(static_cast<Eigen::Index>(active.size()));
    for (std::size_t r = 0; r < active.size(); ++r) {
      const auto row = static_cast<Eigen::Index>(r);
      v[row] = active[r]->evaluate(x);
      j.row(row) = active[r]->gradient(x).transpose();
    }
    // Restrict the derivative to the tangent space at x.
    const Mat tangent = Mat::Identity(dim, dim) - x * x.transpose();
    const Mat jt = j * tangent;
    const Vec step = jt.completeOrthogonalDecomposition().solve(v);
    if (!step.allFinite()) return std::nullopt;
    x = (x - step).normalized();
  }
}

std::vector<Vec> zero_samples(const SemialgebraicSystem& sys, const WeightedBallSet& w, double tol,
                              int max_iter) {
  std::vector<Vec> out;
  for (const auto& b : w.balls)
    if (auto p = project_to_set(sys, b.center, tol, max_iter)) out.push_back(std::move(*p));
  return out;
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::not_applicable:
      return "not_applicable";
  }
  return "unknown";
}

NSWCheckReport verify_nsw(const SemialgebraicSystem& sys, const WeightedBallSet& w,
                          std::span<const Vec> samples, double tol) {
  NSWCheckReport rep;
  const double d = sys.max_degree();
  const double c_const = 40.0 * std::pow(d, 1.5);
  const double approx_const = 13.0 * four_d_pow(sys.max_degree(), sys.s()) * std::pow(d, 1.5);
  rep.worst_c_margin = -kInf;
  rep.worst_approx_margin = -kInf;
  rep.worst_density_margin = -kInf;

  for (std::size_t i = 0; i < w.balls.size(); ++i) {
    const WeightedBall& b = w.balls[i];
    const double cm = b.eps * c_const * b.kappa - 1.0;
    rep.worst_c_margin = std::max(rep.worst_c_margin, cm);
    if (cm > 1e-12) rep.c_violations.push_back(i);
    const double am = normalized_residual(sys, b.center) * approx_const * b.kappa * b.kappa - 1.0;
    rep.worst_approx_margin = std::max(rep.worst_approx_margin, am);
    if (!(am < 0.0)) rep.approx_violations.push_back(i);
  }
  rep.c_bound_ok = rep.c_violations.empty();
  rep.approx_condition_ok = rep.approx_violations.empty();

  rep.samples = samples.size();
  if (samples.empty()) {
    rep.density = w.balls.empty() ? CheckStatus::pass : CheckStatus::not_applicable;
    return rep;
  }
  for (const Vec& p : samples) {
    require_unit(p, "verify_nsw");
    if (!(std::max(0.0, normalized_residual(sys, p)) <= tol))
      throw InputError("verify_nsw: zero sample is off S(F,G) by more than tol");
  }

  double max_eps = 0.0;
  for (const auto& b : w.balls) max_eps = std::max(max_eps, b.eps);
  const double reach = chord_for_geodesic(0.25 * max_eps);
  PointIndex index(static_cast<int>(sys.n() + 1), std::max(reach, 1e-9));
  for (const auto& b : w.balls) index.insert(b.center);

  for (std::size_t s = 0; s < samples.size(); ++s) {
    const Vec& p = samples[s];
    double best = kInf;
    index.for_each_within(p, reach, [&](std::uint32_t id, double) {
      const WeightedBall& b = w.balls[id];
      best = std::min(best, geodesic_distance(b.center, p) - 0.25 * b.eps);
    });
    if (!(best < 0.0)) {
      for (const auto& b : w.balls) best = std::min(best, geodesic_distance(b.center, p) - 0.25 * b.eps);
      rep.density_violations.push_back(s);
    }
    rep.worst_density_margin = std::max(rep.worst_density_margin, best);
  }
  rep.density = rep.density_violations.empty() ? CheckStatus::pass : CheckStatus::fail;
  return rep;
}

}  // namespace semihom
