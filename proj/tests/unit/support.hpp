// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <vector>

#include "semihom/polynomial.hpp"
#include "semihom/random.hpp"

namespace semihom::testing {

/// All exponent vectors of total degree d in `vars` variables.
inline std::vector<MultiIndex> monomials(std::size_t vars, unsigned d) {
  std::vector<MultiIndex> out;
  std::vector<unsigned> e(vars, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == vars) {
      e[i] = left;
      out.emplace_back(e);
      return;
    }
    for (unsigned a = 0; a <= left; ++a) {
      e[i] = a;
      self(self, i + 1, left - a);
    }
  };
  rec(rec, 0, d);
  return out;
}

/// Dense polynomial with standard normal coefficients; `keep` is the
/// probability that a monomial is present.
inline HomogeneousPolynomial random_poly(Rng& rng, std::size_t vars, unsigned d, double keep = 1.0) {
  std::vector<std::pair<MultiIndex, double>> terms;
  for (const auto& a : monomials(vars, d))
    if (rng.uniform() < keep) terms.emplace_back(a, rng.normal());
  if (terms.empty()) terms.emplace_back(monomials(vars, d).front(), 1.0);
  return HomogeneousPolynomial(vars, d, terms);
}

inline SemialgebraicSystem random_system(Rng& rng, int n, std::size_t q, std::size_t s, unsigned dmax) {
  PolyTuple f, g;
  const auto vars = static_cast<std::size_t>(n) + 1;
  for (std::size_t i = 0; i < q; ++i) f.push_back(random_poly(rng, vars, 2 + static_cast<unsigned>(rng.below(dmax - 1))));
  for (std::size_t i = 0; i < s; ++i) g.push_back(random_poly(rng, vars, 2 + static_cast<unsigned>(rng.below(dmax - 1))));
  // make sure D = dmax is attained
  if (!f.empty())
    f[0] = random_poly(rng, vars, dmax);
  else
    g[0] = random_poly(rng, vars, dmax);
  return SemialgebraicSystem(n, f, g);
}

inline HomogeneousPolynomial diff_of_squares() {
  return HomogeneousPolynomial(2, 2, {{{2, 0}, 1.0}, {{0, 2}, -1.0}});
}

inline SemialgebraicSystem four_points() { return SemialgebraicSystem(1, {diff_of_squares()}, {}); }
inline SemialgebraicSystem two_arcs() { return SemialgebraicSystem(1, {}, {diff_of_squares()}); }

inline SemialgebraicSystem two_circles() {
  HomogeneousPolynomial p(3, 2, {{{2, 0, 0}, 1.0}, {{0, 2, 0}, 1.0}, {{0, 0, 2}, -2.0}});
  return SemialgebraicSystem(2, {p}, {});
}

inline Vec unit(std::initializer_list<double> v) {
  Vec x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double c : v) x[i++] = c;
  return x.normalized();
}

}  // namespace semihom::testing
