// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace semihom {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Exponent vector (a_0, ..., a_n) of a monomial X^a.
struct MultiIndex {
  std::vector<unsigned> exponents;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<unsigned> e) : exponents(std::move(e)) {}
  MultiIndex(std::initializer_list<unsigned> e) : exponents(e) {}

  unsigned total_degree() const noexcept;
  std::size_t size() const noexcept { return exponents.size(); }
  unsigned operator[](std::size_t i) const { return exponents[i]; }

  auto operator<=>(const MultiIndex&) const = default;
};

/// Multinomial coefficient d! / (a_0! ... a_n!) for d = |a|.
double multinomial(const MultiIndex& a);

/// Sparse homogeneous polynomial in num_vars = n+1 variables. Stored terms
/// all have |a| = degree and a nonzero coefficient.
class HomogeneousPolynomial {
 public:
  using Terms = std::map<MultiIndex, double>;

  HomogeneousPolynomial() = default;

  /// Throws InputError when a term has the wrong length or total degree.
  /// Repeated multi-indices in `terms` are summed; zero sums are dropped.
  HomogeneousPolynomial(std::size_t num_vars, unsigned degree,
                        const std::vector<std::pair<MultiIndex, double>>& terms);

  std::size_t num_vars() const noexcept { return num_vars_; }
  unsigned degree() const noexcept { return degree_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Coefficient h_a (0 when absent).
  double coeff(const MultiIndex& a) const;

  double operator()(const Vec& x) const { return evaluate(x); }
  double evaluate(const Vec& x) const;
  Vec gradient(const Vec& x) const;

  bool operator==(const HomogeneousPolynomial&) const = default;

 private:
  void check_point(const Vec& x) const;

  std::size_t num_vars_ = 0;
  unsigned degree_ = 0;
  Terms terms_;
};

/// An ordered tuple of homogeneous polynomials sharing num_vars.
using PolyTuple = std::vector<HomogeneousPolynomial>;

double evaluate(const HomogeneousPolynomial& p, const Vec& x);
Vec gradient(const HomogeneousPolynomial& p, const Vec& x);

/// Values (T_1(x), ..., T_m(x)).
Vec evaluate(std::span<const HomogeneousPolynomial> tuple, const Vec& x);

/// |T| x (n+1) matrix whose rows are the gradients. An empty tuple yields a
/// 0 x x.size() matrix.
Mat jacobian(std::span<const HomogeneousPolynomial> tuple, const Vec& x);

/// Weyl (Bombieri) inner product: sum over a of h_a h'_a / C(d; a).
double weyl_inner(const HomogeneousPolynomial& h, const HomogeneousPolynomial& h2);
double weyl_norm(const HomogeneousPolynomial& h);
double weyl_norm_system(std::span<const HomogeneousPolynomial> tuple);

/// p o U, i.e. the polynomial X -> p(U X). U must be orthogonal to 1e-10.
HomogeneousPolynomial rotate(const HomogeneousPolynomial& p, const Mat& u);

/// Diagonal normalization sqrt(d_i), one entry per polynomial.
struct DeltaMatrix {
  Vec diagonal;

  static DeltaMatrix of(std::span<const HomogeneousPolynomial> tuple);
  Mat dense() const { return diagonal.asDiagonal(); }
};

/// Homogeneous semialgebraic system: f_i = 0 (F), g_j >= 0 (G) on S^n.
class SemialgebraicSystem {
 public:
  SemialgebraicSystem() = default;

  /// Validates shared num_vars = n+1, q+s >= 1, and D = max d_i >= 2.
  /// `strict` (one flag per g, may be empty) is recorded but never used in
  /// any computation.
  SemialgebraicSystem(int n, PolyTuple equalities, PolyTuple inequalities,
                      std::vector<bool> strict = {});

  int n() const noexcept { return n_; }
  std::size_t q() const noexcept { return f_.size(); }
  std::size_t s() const noexcept { return g_.size(); }
  const PolyTuple& equalities() const noexcept { return f_; }
  const PolyTuple& inequalities() const noexcept { return g_; }
  const std::vector<bool>& strict() const noexcept { return strict_; }

  /// Degrees in order (F..., G...).
  std::vector<unsigned> degrees() const;
  unsigned max_degree() const noexcept { return max_degree_; }
  /// Sum over polynomials of C(n + d_i, n).
  std::size_t size() const;

  /// Weyl norms, cached at construction.
  const std::vector<double>& equality_norms() const noexcept { return f_norms_; }
  const std::vector<double>& inequality_norms() const noexcept { return g_norms_; }

  bool operator==(const SemialgebraicSystem& o) const {
    return n_ == o.n_ && f_ == o.f_ && g_ == o.g_ && strict_ == o.strict_;
  }

 private:
  int n_ = 0;
  PolyTuple f_;
  PolyTuple g_;
  std::vector<bool> strict_;
  unsigned max_degree_ = 0;
  std::vector<double> f_norms_;
  std::vector<double> g_norms_;
};

}  // namespace semihom
