// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#include "semihom/condition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "semihom/error.hpp"
#include "semihom/random.hpp"

namespace semihom {

void require_unit(const Vec& x, const char* where) {
  if (std::abs(x.norm() - 1.0) > 1e-10)
    throw InputError(std::string(where) + ": point is not on the unit sphere");
}

TangentFrame TangentFrame::at(const Vec& x) {
  const Eigen::Index dim = x.size();
  Eigen::HouseholderQR<Mat> qr{Mat(x)};
  Mat q = qr.householderQ() * Mat::Identity(dim, dim);
  return TangentFrame{x, q.rightCols(dim - 1)};
}

namespace {

// ||T|| * sigma_max(J^+ Delta) for a |T| x m derivative matrix J.
ConditionValue mu_from_derivative(std::span<const HomogeneousPolynomial> tuple,
                                  const Mat& j) {
  const double norm = weyl_norm_system(tuple);
  if (norm == 0.0) return ConditionValue::infinite();
  if (j.rows() > j.cols()) return ConditionValue::infinite();

  Eigen::JacobiSVD<Mat> svd(j, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& sv = svd.singularValues();
  const double smax = sv.size() ? sv[0] : 0.0;
  if (smax == 0.0) return ConditionValue::infinite();
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] <= kRankTolerance * smax) return ConditionValue::infinite();

  const Mat pinv = svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().transpose();
  const Mat scaled = pinv * DeltaMatrix::of(tuple).dense();
  Eigen::JacobiSVD<Mat> svd2(scaled);
  return ConditionValue(norm * svd2.singularValues()[0]);
}

}  // namespace

ConditionValue mu_norm(std::span<const HomogeneousPolynomial> tuple, const Vec& x) {
  require_unit(x, "mu_norm");
  if (tuple.empty()) throw InputError("mu_norm: empty system");
  return mu_from_derivative(tuple, jacobian(tuple, x));
}

ConditionValue mu_proj(std::span<const HomogeneousPolynomial> tuple, const TangentFrame& frame) {
  require_unit(frame.base, "mu_proj");
  if (tuple.empty()) throw InputError("mu_proj: empty system");
  return mu_from_derivative(tuple, jacobian(tuple, frame.base) * frame.basis);
}

ConditionValue mu_proj(std::span<const HomogeneousPolynomial> tuple, const Vec& x) {
  require_unit(x, "mu_proj");
  return mu_proj(tuple, TangentFrame::at(x));
}

ConditionValue kappa(std::span<const HomogeneousPolynomial> tuple, const Vec& x) {
  require_unit(x, "kappa");
  if (tuple.empty()) throw InputError("kappa: empty system");
  const double norm = weyl_norm_system(tuple);
  if (norm == 0.0) return ConditionValue::infinite();
  const double inv_mu = mu_proj(tuple, x).reciprocal();
  const double residual = evaluate(tuple, x).norm() / norm;
  const double sum = inv_mu * inv_mu + residual * residual;
  if (sum == 0.0) return ConditionValue::infinite();
  return ConditionValue(1.0 / std::sqrt(sum));
}

ConditionValue kappa_semi(const SemialgebraicSystem& sys, const Vec& x) {
  const std::size_t q = sys.q();
  const std::size_t s = sys.s();
  const std::size_t cap = static_cast<std::size_t>(sys.n()) + 1;
  if (q > cap) throw InputError("kappa_semi: more equalities than n+1");
  if (q == 0 && s == 0) throw InputError("kappa_semi: empty system");
  require_unit(x, "kappa_semi");

  const std::size_t max_l = std::min(s, cap - q);
  PolyTuple tuple(sys.equalities());
  double best = 0.0;
  bool any = false;

  // Index subsets of G of size l in lexicographic order, l = 0..max_l.
  std::vector<std::size_t> idx;
  for (std::size_t l = (q == 0 ? 1 : 0); l <= max_l; ++l) {
    idx.resize(l);
    for (std::size_t i = 0; i < l; ++i) idx[i] = i;
    for (;;) {
      tuple.resize(q);
      for (std::size_t i : idx) tuple.push_back(sys.inequalities()[i]);
      const double k = kappa(tuple, x).value();
      if (!std::isfinite(k)) return ConditionValue::infinite();
      best = any ? std::max(best, k) : k;
      any = true;
      // advance to the next combination
      std::size_t pos = l;
      while (pos > 0 && idx[pos - 1] == s - l + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < l; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return ConditionValue(best);
}

LipschitzReport kappa_inv_lipschitz_check(const SemialgebraicSystem& sys,
                                          std::size_t trials, std::uint64_t seed) {
  Rng rng(seed, 0x11b5);
  const double d = sys.max_degree();
  LipschitzReport rep;
  rep.trials = trials;
  rep.max_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) {
    const Vec x = rng.on_sphere(sys.n() + 1);
    // Mix far pairs with near pairs; the bound is tightest at short range.
    Vec y;
    if (t % 2 == 0) {
      y = rng.on_sphere(sys.n() + 1);
    } else {
      y = x + std::pow(10.0, -rng.uniform(1.0, 6.0)) * rng.on_sphere(sys.n() + 1);
      y.normalize();
    }
    const double kx = kappa_semi(sys, x).reciprocal();
    const double ky = kappa_semi(sys, y).reciprocal();
    const double excess = std::abs(kx - ky) - d * (x - y).norm();
    if (excess > rep.max_excess) {
      rep.max_excess = excess;
      rep.worst_x = x;
      rep.worst_y = y;
    }
  }
  if (trials == 0) rep.max_excess = 0.0;
  rep.pass = rep.max_excess <= 1e-9;
  return rep;
}

bool approx_member(const SemialgebraicSystem& sys, double r, const Vec& x) {
  for (std::size_t i = 0; i < sys.q(); ++i)
    if (!(std::abs(sys.equalities()[i].evaluate(x)) < sys.equality_norms()[i] * r)) return false;
  for (std::size_t j = 0; j < sys.s(); ++j)
    if (!(sys.inequalities()[j].evaluate(x) > -sys.inequality_norms()[j] * r)) return false;
  return true;
}

}  // namespace semihom
