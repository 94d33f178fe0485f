// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "semihom/error.hpp"
#include "semihom/polynomial.hpp"
#include "support.hpp"

using namespace semihom;
using semihom::testing::monomials;
using semihom::testing::random_poly;

namespace {

// (a . X)^d expanded by the multinomial theorem.
HomogeneousPolynomial linear_power(const Vec& a, unsigned d) {
  std::vector<std::pair<MultiIndex, double>> terms;
  for (const auto& m : monomials(static_cast<std::size_t>(a.size()), d)) {
    double c = multinomial(m);
    for (std::size_t i = 0; i < m.size(); ++i) c *= std::pow(a[static_cast<Eigen::Index>(i)], m[i]);
    terms.emplace_back(m, c);
  }
  return HomogeneousPolynomial(static_cast<std::size_t>(a.size()), d, terms);
}

}  // namespace

TEST(Multinomial, SmallValues) {
  EXPECT_EQ(multinomial({2, 0}), 1.0);
  EXPECT_EQ(multinomial({1, 1}), 2.0);
  EXPECT_EQ(multinomial({1, 1, 1}), 6.0);
  EXPECT_EQ(multinomial({2, 2}), 6.0);
  EXPECT_EQ(multinomial({3, 1, 0}), 4.0);
  EXPECT_EQ(multinomial({2, 1, 1}), 12.0);
}

TEST(Multinomial, RowSumsArePowers) {
  // sum over |a| = d of C(d; a) = m^d
  for (std::size_t m = 1; m <= 4; ++m)
    for (unsigned d = 0; d <= 6; ++d) {
      double sum = 0.0;
      for (const auto& a : monomials(m, d)) sum += multinomial(a);
      EXPECT_DOUBLE_EQ(sum, std::pow(static_cast<double>(m), d)) << m << " " << d;
    }
}

TEST(Polynomial, ConstructionMergesAndDropsZeros) {
  HomogeneousPolynomial p(2, 2, {{{2, 0}, 1.0}, {{2, 0}, 2.0}, {{1, 1}, 0.0}, {{0, 2}, -1.0}});
  EXPECT_EQ(p.terms().size(), 2u);
  EXPECT_EQ(p.coeff({2, 0}), 3.0);
  EXPECT_EQ(p.coeff({1, 1}), 0.0);
}

TEST(Polynomial, RejectsInhomogeneousTermAndNamesIt) {
  try {
    HomogeneousPolynomial p(2, 2, {{{2, 0}, 1.0}, {{1, 0}, 1.0}});
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("total degree"), std::string::npos) << e.what();
  }
  EXPECT_THROW(HomogeneousPolynomial(2, 2, {{{1, 1, 0}, 1.0}}), InputError);
  EXPECT_THROW(HomogeneousPolynomial(2, 2, {{{1, 1}, std::nan("")}}), InputError);
}

TEST(Polynomial, EvaluateAndGradientByHand) {
  const auto p = semihom::testing::diff_of_squares();
  Vec x(2);
  x << 0.6, 0.8;
  EXPECT_NEAR(p.evaluate(x), 0.36 - 0.64, 1e-15);
  const Vec g = p.gradient(x);
  EXPECT_NEAR(g[0], 1.2, 1e-15);
  EXPECT_NEAR(g[1], -1.6, 1e-15);
  EXPECT_THROW(p.evaluate(Vec::Ones(3)), InputError);
}

TEST(Polynomial, GradientMatchesFiniteDifferences) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t vars = 2 + rng.below(3);
    const unsigned d = 2 + static_cast<unsigned>(rng.below(4));
    const auto p = random_poly(rng, vars, d, 0.7);
    const Vec x = rng.on_sphere(static_cast<Eigen::Index>(vars));
    const Vec g = p.gradient(x);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double h = 1e-6;
      Vec xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      EXPECT_NEAR(g[i], (p(xp) - p(xm)) / (2 * h), 1e-6 * (1 + g.norm()));
    }
  }
}

TEST(Polynomial, EulerIdentity) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t vars = 2 + rng.below(3);
    const unsigned d = 2 + static_cast<unsigned>(rng.below(5));
    const auto p = random_poly(rng, vars, d);
    const Vec x = rng.on_sphere(static_cast<Eigen::Index>(vars)) * rng.uniform(0.5, 2.0);
    EXPECT_NEAR(x.dot(p.gradient(x)), d * p(x), 1e-10 * (1 + std::abs(d * p(x))));
  }
}

TEST(Weyl, HandValues) {
  EXPECT_NEAR(weyl_norm(semihom::testing::diff_of_squares()), std::sqrt(2.0), 1e-15);
  // X0 X1 has weight 1 / C(2; 1, 1) = 1/2
  HomogeneousPolynomial p(2, 2, {{{1, 1}, 1.0}});
  EXPECT_NEAR(weyl_norm(p), std::sqrt(0.5), 1e-15);
}

TEST(Weyl, NormOfLinearPowerIsNormPower) {
  Rng rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    const auto vars = static_cast<Eigen::Index>(2 + rng.below(3));
    const unsigned d = 2 + static_cast<unsigned>(rng.below(5));
    Vec a(vars);
    for (Eigen::Index i = 0; i < vars; ++i) a[i] = rng.normal();
    EXPECT_NEAR(weyl_norm(linear_power(a, d)), std::pow(a.norm(), d), 1e-10 * std::pow(a.norm(), d));
  }
}

TEST(Weyl, ReproducingKernel) {
  // <p, (y . X)^d> = p(y)
  Rng rng(10);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t vars = 2 + rng.below(3);
    const unsigned d = 2 + static_cast<unsigned>(rng.below(4));
    const auto p = random_poly(rng, vars, d);
    Vec y(static_cast<Eigen::Index>(vars));
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = rng.normal();
    EXPECT_NEAR(weyl_inner(p, linear_power(y, d)), p(y), 1e-9 * (1 + std::abs(p(y))));
  }
}

TEST(Weyl, InnerRejectsMismatch) {
  HomogeneousPolynomial a(2, 2, {{{2, 0}, 1.0}});
  HomogeneousPolynomial b(2, 3, {{{3, 0}, 1.0}});
  HomogeneousPolynomial c(3, 2, {{{2, 0, 0}, 1.0}});
  EXPECT_THROW(weyl_inner(a, b), InputError);
  EXPECT_THROW(weyl_inner(a, c), InputError);
}

TEST(Rotate, IdentityAndComposition) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t vars = 2 + rng.below(2);
    const auto p = random_poly(rng, vars, 3);
    const auto n = static_cast<Eigen::Index>(vars);
    const auto same = rotate(p, Mat::Identity(n, n));
    for (const auto& [a, c] : p.terms()) EXPECT_NEAR(same.coeff(a), c, 1e-14);

    const Mat u = rng.orthogonal(n);
    const auto pu = rotate(p, u);
    // (p o U)(x) = p(U x)
    const Vec x = rng.on_sphere(n);
    EXPECT_NEAR(pu(x), p(u * x), 1e-12);
  }
}

TEST(Rotate, PreservesWeylNorm) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t vars = 2 + rng.below(3);
    const unsigned d = 1 + static_cast<unsigned>(rng.below(4));
    const auto p = random_poly(rng, vars, d, 0.6);
    const Mat u = rng.orthogonal(static_cast<Eigen::Index>(vars));
    const double a = weyl_norm(p);
    EXPECT_NEAR(weyl_norm(rotate(p, u)), a, 1e-8 * a);
  }
}

TEST(Rotate, RejectsNonOrthogonal) {
  const auto p = semihom::testing::diff_of_squares();
  EXPECT_THROW(rotate(p, 2.0 * Mat::Identity(2, 2)), InputError);
  EXPECT_THROW(rotate(p, Mat::Identity(3, 3)), InputError);
}

TEST(Delta, DiagonalIsSqrtDegree) {
  PolyTuple t{HomogeneousPolynomial(2, 2, {{{2, 0}, 1.0}}), HomogeneousPolynomial(2, 5, {{{5, 0}, 1.0}})};
  const auto d = DeltaMatrix::of(t);
  EXPECT_DOUBLE_EQ(d.diagonal[0], std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(d.diagonal[1], std::sqrt(5.0));
}

TEST(System, Validation) {
  const auto p = semihom::testing::diff_of_squares();
  EXPECT_THROW(SemialgebraicSystem(1, {}, {}), InputError);
  EXPECT_THROW(SemialgebraicSystem(0, {p}, {}), InputError);
  EXPECT_THROW(SemialgebraicSystem(2, {p}, {}), InputError);
  HomogeneousPolynomial linear(2, 1, {{{1, 0}, 1.0}});
  try {
    SemialgebraicSystem(1, {linear}, {});
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("D must be >= 2"), std::string::npos);
  }
  EXPECT_THROW(SemialgebraicSystem(1, {}, {p}, {true, false}), InputError);
}

TEST(System, SizeCountsCoefficientSlots) {
  const auto sys = semihom::testing::two_circles();
  EXPECT_EQ(sys.size(), 6u);  // C(4, 2)
  HomogeneousPolynomial cubic(2, 3, {{{3, 0}, 1.0}});
  SemialgebraicSystem mixed(1, {semihom::testing::diff_of_squares()}, {cubic});
  EXPECT_EQ(mixed.size(), 3u + 4u);
  EXPECT_EQ(mixed.max_degree(), 3u);
  EXPECT_EQ(mixed.strict(), std::vector<bool>{false});
}
