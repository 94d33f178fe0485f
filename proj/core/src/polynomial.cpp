// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#include "semihom/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "semihom/error.hpp"

namespace semihom {

unsigned MultiIndex::total_degree() const noexcept {
  return std::accumulate(exponents.begin(), exponents.end(), 0u);
}

double multinomial(const MultiIndex& a) {
  // Product of binomials avoids overflowing intermediate factorials.
  double result = 1.0;
  unsigned running = 0;
  for (unsigned e : a.exponents) {
    for (unsigned k = 1; k <= e; ++k) {
      ++running;
      result = result * running / k;
    }
  }
  return std::round(result);
}

namespace {

std::string describe(const MultiIndex& a) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ']';
  return os.str();
}

// pw(i, e) = x_i^e for e <= degree.
Mat power_table(const Vec& x, unsigned degree) {
  Mat pw(x.size(), degree + 1);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    pw(i, 0) = 1.0;
    for (unsigned e = 1; e <= degree; ++e) pw(i, e) = pw(i, e - 1) * x[i];
  }
  return pw;
}

}  // namespace

HomogeneousPolynomial::HomogeneousPolynomial(
    std::size_t num_vars, unsigned degree,
    const std::vector<std::pair<MultiIndex, double>>& terms)
    : num_vars_(num_vars), degree_(degree) {
  if (num_vars == 0) throw InputError("polynomial needs at least one variable");
  for (const auto& [a, c] : terms) {
    if (a.size() != num_vars)
      throw InputError("term " + describe(a) + " has " + std::to_string(a.size()) +
                       " exponents, expected " + std::to_string(num_vars));
    if (a.total_degree() != degree)
      throw InputError("term " + describe(a) + " has total degree " +
                       std::to_string(a.total_degree()) + ", polynomial degree is " +
                       std::to_string(degree) + " (not homogeneous)");
    if (!std::isfinite(c)) throw InputError("term " + describe(a) + " has a non-finite coefficient");
    terms_[a] += c;
  }
  std::erase_if(terms_, [](const auto& kv) { return kv.second == 0.0; });
}

double HomogeneousPolynomial::coeff(const MultiIndex& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? 0.0 : it->second;
}

void HomogeneousPolynomial::check_point(const Vec& x) const {
  if (static_cast<std::size_t>(x.size()) != num_vars_)
    throw InputError("point has " + std::to_string(x.size()) +
                     " coordinates, polynomial has " + std::to_string(num_vars_) +
                     " variables");
}

double HomogeneousPolynomial::evaluate(const Vec& x) const {
  check_point(x);
  const Mat pw = power_table(x, degree_);
  double sum = 0.0;
  for (const auto& [a, c] : terms_) {
    double m = c;
    for (std::size_t i = 0; i < num_vars_; ++i) m *= pw(i, a[i]);
    sum += m;
  }
  return sum;
}

Vec HomogeneousPolynomial::gradient(const Vec& x) const {
  check_point(x);
  const Mat pw = power_table(x, degree_);
  Vec g = Vec::Zero(num_vars_);
  for (const auto& [a, c] : terms_) {
    for (std::size_t i = 0; i < num_vars_; ++i) {
      if (a[i] == 0) continue;
      double m = c * a[i] * pw(i, a[i] - 1);
      for (std::size_t j = 0; j < num_vars_; ++j)
        if (j != i) m *= pw(j, a[j]);
      g[i] += m;
    }
  }
  return g;
}

double evaluate(const HomogeneousPolynomial& p, const Vec& x) { return p.evaluate(x); }
Vec gradient(const HomogeneousPolynomial& p, const Vec& x) { return p.gradient(x); }

Vec evaluate(std::span<const HomogeneousPolynomial> tuple, const Vec& x) {
  Vec v(tuple.size());
  for (std::size_t i = 0; i < tuple.size(); ++i) v[i] = tuple[i].evaluate(x);
  return v;
}

Mat jacobian(std::span<const HomogeneousPolynomial> tuple, const Vec& x) {
  Mat j(tuple.size(), x.size());
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i].num_vars() != static_cast<std::size_t>(x.size()))
      throw InputError("jacobian: polynomials must share the point's dimension");
    j.row(i) = tuple[i].gradient(x).transpose();
  }
  return j;
}

double weyl_inner(const HomogeneousPolynomial& h, const HomogeneousPolynomial& h2) {
  if (h.num_vars() != h2.num_vars())
    throw InputError("weyl_inner: variable count mismatch");
  if (h.degree() != h2.degree()) throw InputError("weyl_inner: degree mismatch");
  double sum = 0.0;
  for (const auto& [a, c] : h.terms()) {
    const double c2 = h2.coeff(a);
    if (c2 != 0.0) sum += c * c2 / multinomial(a);
  }
  return sum;
}

double weyl_norm(const HomogeneousPolynomial& h) { return std::sqrt(weyl_inner(h, h)); }

double weyl_norm_system(std::span<const HomogeneousPolynomial> tuple) {
  double sum = 0.0;
  for (const auto& p : tuple) sum += weyl_inner(p, p);
  return std::sqrt(sum);
}

HomogeneousPolynomial rotate(const HomogeneousPolynomial& p, const Mat& u) {
  const auto nv = static_cast<Eigen::Index>(p.num_vars());
  if (u.rows() != nv || u.cols() != nv) throw InputError("rotate: matrix size mismatch");
  const double defect =
      (u.transpose() * u - Mat::Identity(nv, nv)).cwiseAbs().maxCoeff();
  if (defect > 1e-10) throw InputError("rotate: matrix is not orthogonal");

  using Expansion = std::map<std::vector<unsigned>, double>;
  Expansion result;
  for (const auto& [a, c] : p.terms()) {
    Expansion partial{{std::vector<unsigned>(nv, 0u), c}};
    for (Eigen::Index i = 0; i < nv; ++i) {
      // Multiply by (U X)_i = sum_j U_ij X_j, a_i times.
      for (unsigned rep = 0; rep < a[i]; ++rep) {
        Expansion next;
        for (const auto& [e, v] : partial) {
          for (Eigen::Index j = 0; j < nv; ++j) {
            if (u(i, j) == 0.0) continue;
            auto e2 = e;
            ++e2[j];
            next[e2] += v * u(i, j);
          }
        }
        partial = std::move(next);
      }
    }
    for (const auto& [e, v] : partial) result[e] += v;
  }

  std::vector<std::pair<MultiIndex, double>> terms;
  for (const auto& [e, v] : result)
    if (std::abs(v) >= 1e-14) terms.emplace_back(MultiIndex(e), v);
  return HomogeneousPolynomial(p.num_vars(), p.degree(), terms);
}

DeltaMatrix DeltaMatrix::of(std::span<const HomogeneousPolynomial> tuple) {
  DeltaMatrix d;
  d.diagonal.resize(tuple.size());
  for (std::size_t i = 0; i < tuple.size(); ++i)
    d.diagonal[i] = std::sqrt(static_cast<double>(tuple[i].degree()));
  return d;
}

SemialgebraicSystem::SemialgebraicSystem(int n, PolyTuple equalities,
                                         PolyTuple inequalities,
                                         std::vector<bool> strict)
    : n_(n), f_(std::move(equalities)), g_(std::move(inequalities)), strict_(std::move(strict)) {
  if (n < 1) throw InputError("sphere dimension n must be >= 1");
  if (f_.empty() && g_.empty()) throw InputError("system has no polynomials");
  if (strict_.empty()) strict_.assign(g_.size(), false);
  if (strict_.size() != g_.size()) throw InputError("one strict flag per inequality expected");
  auto check = [&](const HomogeneousPolynomial& p, const char* kind, std::size_t i) {
    if (p.num_vars() != static_cast<std::size_t>(n + 1))
      throw InputError(std::string(kind) + "[" + std::to_string(i) + "] has " +
                       std::to_string(p.num_vars()) + " variables, expected n+1 = " +
                       std::to_string(n + 1));
    max_degree_ = std::max(max_degree_, p.degree());
  };
  for (std::size_t i = 0; i < f_.size(); ++i) check(f_[i], "F", i);
  for (std::size_t i = 0; i < g_.size(); ++i) check(g_[i], "G", i);
  if (max_degree_ < 2)
    throw InputError("maximum degree D must be >= 2");
  for (const auto& p : f_) f_norms_.push_back(weyl_norm(p));
  for (const auto& p : g_) g_norms_.push_back(weyl_norm(p));
}

std::vector<unsigned> SemialgebraicSystem::degrees() const {
  std::vector<unsigned> d;
  for (const auto& p : f_) d.push_back(p.degree());
  for (const auto& p : g_) d.push_back(p.degree());
  return d;
}

std::size_t SemialgebraicSystem::size() const {
  auto binom = [](std::size_t a, std::size_t b) {
    std::size_t r = 1;
    for (std::size_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  std::size_t total = 0;
  for (unsigned d : degrees()) total += binom(static_cast<std::size_t>(n_) + d, static_cast<std::size_t>(n_));
  return total;
}

}  // namespace semihom
