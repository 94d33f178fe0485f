// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#include "semihom/homology.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

#include "semihom/error.hpp"

namespace semihom {

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& dense) {
  const std::size_t r = dense.size();
  const std::size_t c = r ? dense[0].size() : 0;
  SparseIntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (dense[i].size() != c) throw InputError("matrix rows differ in length");
    for (std::size_t j = 0; j < c; ++j)
      if (dense[i][j] != 0) m.columns[j].emplace_back(static_cast<std::uint32_t>(i), dense[i][j]);
  }
  return m;
}

std::vector<std::vector<std::int64_t>> SparseIntMatrix::to_dense() const {
  std::vector<std::vector<std::int64_t>> d(rows, std::vector<std::int64_t>(cols, 0));
  for (std::size_t j = 0; j < cols; ++j)
    for (const auto& [i, v] : columns[j]) d[i][j] = v;
  return d;
}

std::size_t SparseIntMatrix::nonzeros() const noexcept {
  std::size_t n = 0;
  for (const auto& c : columns) n += c.size();
  return n;
}

SparseIntMatrix multiply(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.cols != b.rows) throw InputError("multiply: inner dimensions differ");
  SparseIntMatrix out(a.rows, b.cols);
  std::vector<std::int64_t> acc(a.rows, 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t j = 0; j < b.cols; ++j) {
    touched.clear();
    for (const auto& [k, bv] : b.columns[j]) {
      for (const auto& [i, av] : a.columns[k]) {
        std::int64_t prod = 0;
        if (__builtin_mul_overflow(av, bv, &prod) || __builtin_add_overflow(acc[i], prod, &acc[i]))
          throw ConfigError("multiply: int64 overflow");
        touched.push_back(i);
      }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (std::uint32_t i : touched) {
      if (acc[i] != 0) out.columns[j].emplace_back(i, acc[i]);
      acc[i] = 0;
    }
  }
  return out;
}

bool is_zero(const SparseIntMatrix& m) {
  for (const auto& c : m.columns)
    for (const auto& e : c)
      if (e.second != 0) return false;
  return true;
}

SparseIntMatrix boundary_matrix(const SimplicialComplex& c, int k) {
  if (k < 1 || k > c.max_dim())
    throw InputError("boundary_matrix: k = " + std::to_string(k) + " outside [1, " +
                     std::to_string(c.max_dim()) + "]");
  SparseIntMatrix m(c.count(k - 1), c.count(k));
  std::vector<std::uint32_t> face(static_cast<std::size_t>(k));
  for (std::size_t j = 0; j < m.cols; ++j) {
    const auto s = c.simplex(k, j);
    auto& col = m.columns[j];
    for (std::size_t omit = 0; omit < s.size(); ++omit) {
      std::size_t w = 0;
      for (std::size_t a = 0; a < s.size(); ++a)
        if (a != omit) face[w++] = s[a];
      const auto row = c.index_of(face);
      if (!row) throw InputError("boundary_matrix: complex is not closed under faces");
      col.emplace_back(static_cast<std::uint32_t>(*row), (omit % 2) ? -1 : 1);
    }
    std::sort(col.begin(), col.end());
  }
  return m;
}

namespace {

struct Overflow {};

// Scalar policies for fraction-free elimination.
struct I64 {
  using T = std::int64_t;
  static T from(std::int64_t v) { return v; }
  static T mul(T a, T b) {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static T sub(T a, T b) {
    T r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static T gcd(T a, T b) { return std::gcd(a, b); }
  static bool zero(const T& a) { return a == 0; }
  static T div(T a, T b) { return a / b; }
};

struct Big {
  using T = mpz_class;
  static T from(std::int64_t v) { return mpz_class(static_cast<long>(v)); }
  static T mul(const T& a, const T& b) { return a * b; }
  static T sub(const T& a, const T& b) { return a - b; }
  static T gcd(const T& a, const T& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
  }
  static bool zero(const T& a) { return sgn(a) == 0; }
  static T div(const T& a, const T& b) { return a / b; }
};

template <class P>
using Column = std::vector<std::pair<std::uint32_t, typename P::T>>;

// c <- b c - a p, then divide by the content gcd.
template <class P>
void combine(Column<P>& c, const Column<P>& p, const typename P::T& a, const typename P::T& b) {
  Column<P> out;
  out.reserve(c.size() + p.size());
  std::size_t i = 0, j = 0;
  while (i < c.size() || j < p.size()) {
    if (j == p.size() || (i < c.size() && c[i].first < p[j].first)) {
      out.emplace_back(c[i].first, P::mul(b, c[i].second));
      ++i;
    } else if (i == c.size() || p[j].first < c[i].first) {
      out.emplace_back(p[j].first, P::sub(typename P::T(0), P::mul(a, p[j].second)));
      ++j;
    } else {
      auto v = P::sub(P::mul(b, c[i].second), P::mul(a, p[j].second));
      if (!P::zero(v)) out.emplace_back(c[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  typename P::T g(0);
  for (const auto& e : out) g = P::gcd(g, e.second);
  if (!P::zero(g) && g != typename P::T(1))
    for (auto& e : out) e.second = P::div(e.second, g);
  c.swap(out);
}

// Left-to-right lowest-pivot column reduction over Q. Columns flagged in
// `cleared` are known to reduce to zero and are skipped. Returns the rank;
// pivot rows of the nonzero reduced columns go to `pivot_rows`.
template <class P>
std::size_t reduce_rank(const SparseIntMatrix& m, const std::vector<char>* cleared,
                        std::vector<std::uint32_t>* pivot_rows) {
  std::vector<Column<P>> cols(m.cols);
  std::vector<std::int64_t> owner(m.rows, -1);
  std::size_t rank = 0;
  if (pivot_rows) pivot_rows->clear();
  for (std::size_t j = 0; j < m.cols; ++j) {
    if (cleared && (*cleared)[j]) continue;
    Column<P>& c = cols[j];
    for (const auto& [r, v] : m.columns[j])
      if (v != 0) c.emplace_back(r, P::from(v));
    while (!c.empty()) {
      const std::int64_t o = owner[c.back().first];
      if (o < 0) break;
      const Column<P>& p = cols[static_cast<std::size_t>(o)];
      typename P::T a = c.back().second, b = p.back().second;
      const typename P::T g = P::gcd(a, b);
      a = P::div(a, g);
      b = P::div(b, g);
      combine<P>(c, p, a, b);
    }
    if (!c.empty()) {
      owner[c.back().first] = static_cast<std::int64_t>(j);
      ++rank;
      if (pivot_rows) pivot_rows->push_back(c.back().first);
    }
  }
  return rank;
}

std::size_t rank_q(const SparseIntMatrix& m, const std::vector<char>* cleared,
                   std::vector<std::uint32_t>* pivot_rows) {
  try {
    return reduce_rank<I64>(m, cleared, pivot_rows);
  } catch (const Overflow&) {
    return reduce_rank<Big>(m, cleared, pivot_rows);
  }
}

std::size_t rank_f2(const SparseIntMatrix& m, const std::vector<char>* cleared,
                    std::vector<std::uint32_t>* pivot_rows) {
  std::vector<std::vector<std::uint32_t>> cols(m.cols);
  std::vector<std::int64_t> owner(m.rows, -1);
  std::size_t rank = 0;
  if (pivot_rows) pivot_rows->clear();
  std::vector<std::uint32_t> tmp;
  for (std::size_t j = 0; j < m.cols; ++j) {
    if (cleared && (*cleared)[j]) continue;
    auto& c = cols[j];
    for (const auto& [r, v] : m.columns[j])
      if (v % 2 != 0) c.push_back(r);
    while (!c.empty()) {
      const std::int64_t o = owner[c.back()];
      if (o < 0) break;
      const auto& p = cols[static_cast<std::size_t>(o)];
      tmp.clear();
      std::set_symmetric_difference(c.begin(), c.end(), p.begin(), p.end(), std::back_inserter(tmp));
      c.swap(tmp);
    }
    if (!c.empty()) {
      owner[c.back()] = static_cast<std::int64_t>(j);
      ++rank;
      if (pivot_rows) pivot_rows->push_back(c.back());
    }
  }
  return rank;
}

// Dense Smith form over Z with minimal-absolute-value pivots. Appends the
// nonzero invariant factors in divisibility order.
void dense_snf(std::vector<std::vector<mpz_class>>& a, std::vector<mpz_class>& factors) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (sgn(a[i][j]) != 0 && (pi == m || mpz_cmpabs(a[i][j].get_mpz_t(), a[pi][pj].get_mpz_t()) < 0)) {
            pi = i;
            pj = j;
          }
      if (pi == m) return;
      std::swap(a[t], a[pi]);
      for (std::size_t i = t; i < m; ++i) std::swap(a[i][t], a[i][pj]);

      bool clean = true;
      mpz_class q;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(a[i][t]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        if (sgn(a[i][t]) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(a[t][j]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
        if (sgn(a[t][j]) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
            for (std::size_t jj = t; jj < n; ++jj) a[t][jj] += a[i][jj];
            divides = false;
            break;
          }
      if (divides) break;
    }
    factors.push_back(abs(a[t][t]));
  }
}

constexpr std::size_t kMaxDenseCore = 4000;

}  // namespace

std::size_t rational_rank(const SparseIntMatrix& m) { return rank_q(m, nullptr, nullptr); }

std::size_t rank_mod2(const SparseIntMatrix& m) { return rank_f2(m, nullptr, nullptr); }

std::vector<std::int64_t> SmithForm::factors() const {
  std::vector<std::int64_t> f(unit_factors, 1);
  f.insert(f.end(), nontrivial.begin(), nontrivial.end());
  return f;
}

SmithForm smith_normal_form(const SparseIntMatrix& input) {
  SmithForm out;
  // Sparse phase: pivot on unit entries. After clearing the pivot row with
  // column operations, the pivot row and column split off as a 1 x 1 block.
  std::vector<std::vector<SparseIntMatrix::Entry>> cols = input.columns;
  for (auto& c : cols)
    c.erase(std::remove_if(c.begin(), c.end(), [](const auto& e) { return e.second == 0; }), c.end());
  std::vector<std::vector<std::uint32_t>> row_cols(input.rows);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& e : cols[j]) row_cols[e.first].push_back(static_cast<std::uint32_t>(j));
  std::vector<char> col_alive(cols.size(), 1), row_alive(input.rows, 1);

  auto entry = [&](std::size_t c, std::uint32_t r) -> std::int64_t {
    const auto& col = cols[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const SparseIntMatrix::Entry& e, std::uint32_t x) { return e.first < x; });
    return (it != col.end() && it->first == r) ? it->second : 0;
  };

  std::vector<std::size_t> order(cols.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cols[a].size() < cols[b].size(); });

  bool overflow = false;
  for (bool progress = true; progress && !overflow;) {
    progress = false;
    for (std::size_t j : order) {
      if (!col_alive[j] || cols[j].empty()) continue;
      std::int64_t best_row = -1;
      std::size_t best_len = 0;
      for (const auto& [r, v] : cols[j])
        if ((v == 1 || v == -1) && (best_row < 0 || row_cols[r].size() < best_len)) {
          best_row = r;
          best_len = row_cols[r].size();
        }
      if (best_row < 0) continue;
      const auto r = static_cast<std::uint32_t>(best_row);
      const std::int64_t u = entry(j, r);

      // Eliminate row r from every other live column; stop cleanly on overflow.
      std::vector<std::uint32_t> targets = row_cols[r];
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      std::vector<std::pair<std::uint32_t, std::vector<SparseIntMatrix::Entry>>> updates;
      try {
        for (std::uint32_t c : targets) {
          if (c == j || !col_alive[c]) continue;
          const std::int64_t a = entry(c, r);
          if (a == 0) continue;
          const std::int64_t factor = I64::mul(a, u);  // a / u with u = +-1
          Column<I64> cc(cols[c].begin(), cols[c].end());
          const Column<I64> pj(cols[j].begin(), cols[j].end());
          // cc <- cc - factor * pj  (no content division: this must stay unimodular)
          Column<I64> res;
          std::size_t x = 0, y = 0;
          while (x < cc.size() || y < pj.size()) {
            if (y == pj.size() || (x < cc.size() && cc[x].first < pj[y].first)) {
              res.push_back(cc[x++]);
            } else if (x == cc.size() || pj[y].first < cc[x].first) {
              res.emplace_back(pj[y].first, I64::sub(0, I64::mul(factor, pj[y].second)));
              ++y;
            } else {
              const std::int64_t v = I64::sub(cc[x].second, I64::mul(factor, pj[y].second));
              if (v != 0) res.emplace_back(cc[x].first, v);
              ++x;
              ++y;
            }
          }
          updates.emplace_back(c, std::move(res));
        }
      } catch (const Overflow&) {
        overflow = true;
        break;
      }
      for (auto& [c, res] : updates) {
        for (const auto& e : res)
          if (entry(c, e.first) == 0) row_cols[e.first].push_back(c);
        cols[c] = std::move(res);
      }
      col_alive[j] = 0;
      row_alive[r] = 0;
      cols[j].clear();
      ++out.unit_factors;
      progress = true;
    }
  }

  // Dense phase on whatever is left.
  std::vector<std::size_t> live_cols;
  std::vector<std::int64_t> row_map(input.rows, -1);
  std::size_t live_rows = 0;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (!col_alive[j]) continue;
    bool any = false;
    for (const auto& [r, v] : cols[j])
      if (v != 0 && row_alive[r]) {
        any = true;
        if (row_map[r] < 0) row_map[r] = static_cast<std::int64_t>(live_rows++);
      }
    if (any) live_cols.push_back(j);
  }
  if (live_cols.empty()) return out;
  if (live_rows > kMaxDenseCore || live_cols.size() > kMaxDenseCore)
    throw ConfigError("smith_normal_form: dense core " + std::to_string(live_rows) + " x " +
                      std::to_string(live_cols.size()) + " is too large");
  std::vector<std::vector<mpz_class>> dense(live_rows, std::vector<mpz_class>(live_cols.size()));
  for (std::size_t c = 0; c < live_cols.size(); ++c)
    for (const auto& [r, v] : cols[live_cols[c]])
      if (row_alive[r] && v != 0) dense[static_cast<std::size_t>(row_map[r])][c] = static_cast<long>(v);
  std::vector<mpz_class> factors;
  dense_snf(dense, factors);
  for (const auto& f : factors) {
    if (f == 1) {
      ++out.unit_factors;
      continue;
    }
    if (f.fits_slong_p() && out.oversized.empty())
      out.nontrivial.push_back(f.get_si());
    else
      out.oversized.push_back(f.get_str());
  }
  return out;
}

const char* to_string(Coefficients c) {
  switch (c) {
    case Coefficients::integer:
      return "integer";
    case Coefficients::rational:
      return "rational";
    case Coefficients::mod2:
      return "mod2";
  }
  return "unknown";
}

HomologyReport betti_numbers(const SimplicialComplex& c, const HomologyOptions& opts) {
  HomologyReport rep;
  rep.coefficients = opts.coefficients;
  const int top = c.max_dim();
  rep.simplex_counts.resize(static_cast<std::size_t>(top) + 1);
  for (int k = 0; k <= top; ++k) rep.simplex_counts[static_cast<std::size_t>(k)] = c.count(k);
  rep.boundary_ranks.assign(static_cast<std::size_t>(top) + 2, 0);

  // Highest dimension first so pivot rows clear columns one level down.
  std::vector<char> cleared;
  std::vector<std::uint32_t> pivots;
  for (int k = top; k >= 1; --k) {
    const SparseIntMatrix d = boundary_matrix(c, k);
    if (cleared.size() != d.cols) cleared.assign(d.cols, 0);
    const std::size_t r = opts.coefficients == Coefficients::mod2 ? rank_f2(d, &cleared, &pivots)
                                                                    : rank_q(d, &cleared, &pivots);
    rep.boundary_ranks[static_cast<std::size_t>(k)] = r;
    cleared.assign(d.rows, 0);
    for (std::uint32_t p : pivots) cleared[p] = 1;

    if (opts.coefficients == Coefficients::integer) {
      const SmithForm snf = smith_normal_form(d);
      if (snf.rank() != r) rep.snf_consistent = false;
      if (!snf.oversized.empty())
        throw ConfigError("homology: torsion coefficient " + snf.oversized.front() + " exceeds int64");
      if (!snf.nontrivial.empty()) rep.torsion[k - 1] = snf.nontrivial;
    }
  }

  rep.betti.resize(static_cast<std::size_t>(top) + 1);
  for (int k = 0; k <= top; ++k) {
    const auto ck = static_cast<std::int64_t>(rep.simplex_counts[static_cast<std::size_t>(k)]);
    rep.betti[static_cast<std::size_t>(k)] =
        ck - static_cast<std::int64_t>(rep.boundary_ranks[static_cast<std::size_t>(k)]) -
        static_cast<std::int64_t>(rep.boundary_ranks[static_cast<std::size_t>(k) + 1]);
    rep.euler += (k % 2 ? -1 : 1) * ck;
  }
  rep.boundary_ranks.pop_back();
  return rep;
}

}  // namespace semihom
