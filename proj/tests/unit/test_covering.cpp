// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "semihom/covering.hpp"
#include "semihom/error.hpp"
#include "support.hpp"

using namespace semihom;
using semihom::testing::diff_of_squares;
using semihom::testing::four_points;
using semihom::testing::two_arcs;
using semihom::testing::unit;
using std::numbers::pi;

namespace {

std::vector<Vec> four_point_zeros() {
  return {unit({1, 1}), unit({1, -1}), unit({-1, 1}), unit({-1, -1})};
}

// Dense samples of {|x0| >= |x1|} on S^1.
std::vector<Vec> arc_samples(std::size_t per_arc) {
  std::vector<Vec> out;
  for (double base : {0.0, pi})
    for (std::size_t i = 0; i <= per_arc; ++i) {
      const double t = base - pi / 4 + (pi / 2) * static_cast<double>(i) / static_cast<double>(per_arc);
      Vec x(2);
      x << std::cos(t), std::sin(t);
      if (std::abs(x[0]) >= std::abs(x[1])) out.push_back(x);
    }
  return out;
}

CoveringParams at_scale(double scale, std::uint64_t seed = 0) {
  CoveringParams p;
  p.scale = scale;
  p.grid.seed = seed;
  return p;
}

}  // namespace

TEST(RadiusValue, HandValues) {
  EXPECT_NEAR(radius_value(1.0, 2, 0, 1.0), 1.0 / (360.0 * std::pow(2.0, 2.5)), 1e-18);
  EXPECT_NEAR(radius_value(1.0, 2, 0, 1.0), 4.9105e-4, 1e-7);
  EXPECT_NEAR(radius_value(1.0, 2, 0, 1.0) / radius_value(1.0, 2, 1, 1.0), 8.0, 1e-12);
  EXPECT_NEAR(radius_value(3.0, 4, 1, 100.0), 100.0 * radius_value(3.0, 4, 1, 1.0), 1e-15);
  EXPECT_EQ(radius_value(1e-3, 2, 0, 1.0), 1.0);
  EXPECT_EQ(radius_value(std::numeric_limits<double>::infinity(), 2, 0, 1.0), 0.0);
}

TEST(RadiusFunction, ConstantsAndSingularity) {
  const auto sys = two_arcs();
  const RadiusFunction f(sys, 2.0);
  EXPECT_NEAR(f.denominator(), 360.0 * 8.0 * std::pow(2.0, 2.5), 1e-9);
  EXPECT_NEAR(f.lipschitz_constant(), 2.0 / (180.0 * 8.0 * std::pow(2.0, 1.5)), 1e-15);
  EXPECT_NEAR(f(unit({1, 0})), 2.0 / (f.denominator() * 2.0), 1e-15);

  SemialgebraicSystem zero(1, {HomogeneousPolynomial(2, 2, {})}, {});
  const RadiusFunction g(zero, 1.0);
  try {
    g(unit({0.6, 0.8}));
    FAIL();
  } catch (const SingularityError& e) {
    ASSERT_EQ(e.point().size(), 2u);
    EXPECT_NEAR(e.point()[0], 0.6, 1e-15);
    EXPECT_FALSE(std::isfinite(e.kappa()));
  }
  EXPECT_THROW(RadiusFunction(sys, 0.0), InputError);
}

TEST(NswRadius, Formula) { EXPECT_NEAR(nsw_radius(2.0, 4), 1.0 / (40.0 * 8.0 * 2.0), 1e-18); }

TEST(Covering, EmptySetKeepsNothing) {
  HomogeneousPolynomial p(2, 2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}});
  SemialgebraicSystem sys(1, {p}, {});
  const auto w = covering(sys, at_scale(1.0));
  EXPECT_TRUE(w.empty());
  EXPECT_GT(w.counters.cover_balls, 0u);
  EXPECT_EQ(w.counters.filter_passed, 0u);
  EXPECT_EQ(w.counters.filter_rejected, w.counters.cover_balls);
  const auto rep = verify_nsw(sys, w, {});
  EXPECT_TRUE(rep.all_ok());
}

TEST(Covering, FourPointsAtScaleOne) {
  const auto sys = four_points();
  CoverOutput raw;
  const auto w = covering(sys, at_scale(1.0), &raw);
  ASSERT_FALSE(w.empty());
  EXPECT_EQ(w.density_floor, 0.0);
  EXPECT_EQ(raw.balls.size(), w.counters.cover_balls);
  const double sqrt_d = std::sqrt(2.0);
  for (const auto& b : w.balls) {
    EXPECT_TRUE(approx_member(sys, sqrt_d * b.cover_radius, b.center));
    const double k = kappa_semi(sys, b.center).value();
    EXPECT_NEAR(b.kappa, k, 1e-12 * k);
    EXPECT_NEAR(b.eps, 1.0 / (40.0 * std::pow(2.0, 1.5) * k), 1e-15);
    // the cover ball is final for the radius function
    EXPECT_LT(b.cover_radius, radius_value(k, 2, 0, 1.0));
  }
  ASSERT_FALSE(w.rejected_sample.empty());
  for (const auto& b : w.rejected_sample) EXPECT_FALSE(approx_member(sys, sqrt_d * b.radius, b.center));

  const auto zeros = four_point_zeros();
  const auto rep = verify_nsw(sys, w, zeros);
  EXPECT_TRUE(rep.all_ok()) << rep.worst_c_margin << " " << rep.worst_approx_margin << " "
                            << rep.worst_density_margin;
  const auto newton = zero_samples(sys, w);
  EXPECT_EQ(newton.size(), w.balls.size());
  EXPECT_TRUE(verify_nsw(sys, w, newton).all_ok());
}

TEST(Covering, TwoArcsAtScaleOneIsDenseOnTheArcs) {
  const auto sys = two_arcs();
  const auto w = covering(sys, at_scale(1.0));
  ASSERT_FALSE(w.empty());
  EXPECT_EQ(w.counters.filter_passed, w.balls.size() + w.counters.thinned_away);
  const auto rep = verify_nsw(sys, w, arc_samples(2000));
  EXPECT_TRUE(rep.all_ok()) << rep.worst_c_margin << " " << rep.worst_approx_margin << " "
                            << rep.worst_density_margin;
  // a point deep inside the arcs is covered as well as the boundary
  EXPECT_TRUE(verify_nsw(sys, w, std::vector<Vec>{unit({1, 0}), unit({-1, 0})}).all_ok());
}

TEST(Covering, RelaxedEpsHasDensityFloor) {
  const auto sys = four_points();
  const auto w = covering(sys, at_scale(50.0));
  EXPECT_EQ(w.density_floor, 5.0);
  for (const auto& b : w.balls) {
    const double k = kappa_semi(sys, b.center).value();
    EXPECT_EQ(b.eps, std::max(nsw_radius(k, 2), 5.0 * b.cover_radius));
  }
}

TEST(Covering, WorkIsMonotoneInScale) {
  const auto sys = four_points();
  std::size_t prev_work = std::numeric_limits<std::size_t>::max();
  std::size_t prev_balls = prev_work;
  for (double scale : {1.0, 2.0, 4.0, 16.0, 64.0}) {
    const auto w = covering(sys, at_scale(scale));
    EXPECT_LE(w.counters.f_evaluations, prev_work) << scale;
    EXPECT_LE(w.counters.cover_balls, prev_balls) << scale;
    prev_work = w.counters.f_evaluations;
    prev_balls = w.counters.cover_balls;
  }
}

TEST(Covering, Deterministic) {
  const auto a = covering(four_points(), at_scale(4.0, 3));
  const auto b = covering(four_points(), at_scale(4.0, 3));
  ASSERT_EQ(a.balls.size(), b.balls.size());
  for (std::size_t i = 0; i < a.balls.size(); ++i) {
    EXPECT_EQ(a.balls[i].center, b.balls[i].center);
    EXPECT_EQ(a.balls[i].eps, b.balls[i].eps);
  }
}

TEST(Covering, RejectsBadInput) {
  Rng rng(51);
  PolyTuple f{diff_of_squares(), diff_of_squares()};
  EXPECT_THROW(covering(SemialgebraicSystem(1, f, {}), at_scale(1.0)), InputError);
  CoveringParams p = at_scale(2.0);
  p.relaxed_density_floor = 4.0;
  EXPECT_THROW(covering(four_points(), p), InputError);
  SemialgebraicSystem zero(1, {HomogeneousPolynomial(2, 2, {})}, {});
  EXPECT_THROW(covering(zero, at_scale(1.0)), SingularityError);
}

TEST(Covering, SingularZeroDoesNotRunForever) {
  // X0^2 vanishes to second order at (0, +-1): kappa blows up there.
  SemialgebraicSystem sys(1, {HomogeneousPolynomial(2, 2, {{{2, 0}, 1.0}})}, {});
  CoveringParams p = at_scale(1.0);
  p.grid.max_grid_points = 20000;
  bool stopped = false;
  try {
    covering(sys, p);
  } catch (const NonterminationError&) {
    stopped = true;
  } catch (const SingularityError&) {
    stopped = true;
  }
  EXPECT_TRUE(stopped);
}

TEST(Thin, DroppedBallsAreDominated) {
  Rng rng(52);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<WeightedBall> balls;
    const int count = 50 + static_cast<int>(rng.below(150));
    for (int i = 0; i < count; ++i) {
      WeightedBall b;
      b.center = rng.on_sphere(3);
      b.cover_radius = rng.uniform(0.001, 0.05);
      b.eps = rng.uniform(0.05, 1.0);
      b.grid_index = static_cast<std::size_t>(i);
      balls.push_back(b);
    }
    const auto kept = thin_balls(balls);
    ASSERT_FALSE(kept.empty());
    for (std::size_t i = 1; i < kept.size(); ++i) EXPECT_LT(kept[i - 1].grid_index, kept[i].grid_index);
    std::vector<char> in(balls.size(), 0);
    for (const auto& b : kept) in[b.grid_index] = 1;
    for (const auto& y : balls) {
      if (in[y.grid_index]) continue;
      bool dominated = false;
      for (const auto& x : kept)
        if (geodesic_distance(x.center, y.center) + y.cover_radius < 0.25 * x.eps) dominated = true;
      EXPECT_TRUE(dominated);
    }
  }
}

TEST(Project, ConvergesToTheSet) {
  Rng rng(53);
  const auto sys = four_points();
  for (int t = 0; t < 100; ++t) {
    const Vec start = rng.on_sphere(2);
    const auto p = project_to_set(sys, start);
    ASSERT_TRUE(p.has_value());
    EXPECT_LE(normalized_residual(sys, *p), 1e-12);
    EXPECT_NEAR(p->norm(), 1.0, 1e-14);
  }
  HomogeneousPolynomial empty(2, 2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}});
  EXPECT_FALSE(project_to_set(SemialgebraicSystem(1, {empty}, {}), unit({1, 0})).has_value());
}

TEST(Project, InequalityInteriorIsAlreadyInside) {
  const auto sys = two_arcs();
  EXPECT_LT(normalized_residual(sys, unit({1, 0})), 0.0);
  const auto p = project_to_set(sys, unit({1, 0}));
  ASSERT_TRUE(p);
  EXPECT_EQ(*p, unit({1, 0}));
  const auto q = project_to_set(sys, unit({0.1, 1}));
  ASSERT_TRUE(q);
  EXPECT_GE(std::abs((*q)[0]), std::abs((*q)[1]) - 1e-12);
}

TEST(VerifyNsw, StatusesAndLocalizedViolations) {
  const auto sys = four_points();
  WeightedBallSet none;
  EXPECT_EQ(verify_nsw(sys, none, {}).density, CheckStatus::pass);
  EXPECT_EQ(verify_nsw(sys, none, four_point_zeros()).density, CheckStatus::fail);

  const auto w = covering(sys, at_scale(1.0));
  EXPECT_EQ(verify_nsw(sys, w, {}).density, CheckStatus::not_applicable);
  EXPECT_THROW(verify_nsw(sys, w, std::vector<Vec>{unit({1, 0})}), InputError);

  const auto loose = covering(sys, at_scale(1e4));
  ASSERT_FALSE(loose.empty());
  const auto rep = verify_nsw(sys, loose, four_point_zeros());
  EXPECT_FALSE(rep.approx_condition_ok);
  EXPECT_FALSE(rep.c_bound_ok);
  EXPECT_FALSE(rep.all_ok());
  const double approx_const = 13.0 * std::pow(2.0, 1.5);
  std::vector<char> flagged(loose.balls.size(), 0);
  for (std::size_t i : rep.approx_violations) flagged[i] = 1;
  for (std::size_t i = 0; i < loose.balls.size(); ++i) {
    const auto& b = loose.balls[i];
    const double margin = normalized_residual(sys, b.center) * approx_const * b.kappa * b.kappa - 1.0;
    EXPECT_EQ(flagged[i] != 0, margin >= 0.0) << i;
  }
  EXPECT_STREQ(to_string(CheckStatus::not_applicable), "not_applicable");
}
