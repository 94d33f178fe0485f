// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "semihom/nerve.hpp"

namespace semihom {

/// Column-major sparse integer matrix; each column is sorted by row.
struct SparseIntMatrix {
  using Entry = std::pair<std::uint32_t, std::int64_t>;

  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<Entry>> columns;

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}

  /// Builds from a dense row-major matrix.
  static SparseIntMatrix from_dense(const std::vector<std::vector<std::int64_t>>& dense);
  std::vector<std::vector<std::int64_t>> to_dense() const;
  std::size_t nonzeros() const noexcept;
};

/// Exact product; throws ConfigError if an entry leaves int64.
SparseIntMatrix multiply(const SparseIntMatrix& a, const SparseIntMatrix& b);
bool is_zero(const SparseIntMatrix& m);

/// Rows: (k-1)-simplices, columns: k-simplices, both in complex order.
/// Entry (face, sigma) = (-1)^i when face omits the i-th vertex of sigma.
SparseIntMatrix boundary_matrix(const SimplicialComplex& c, int k);

/// Rank over Q, exact.
std::size_t rational_rank(const SparseIntMatrix& m);
/// Rank over GF(2).
std::size_t rank_mod2(const SparseIntMatrix& m);

struct SmithForm {
  std::size_t unit_factors = 0;           ///< number of invariant factors equal to 1
  std::vector<std::int64_t> nontrivial;   ///< factors > 1, each dividing the next
  /// Factors past int64 range, in decimal; they follow `nontrivial`.
  std::vector<std::string> oversized;
  std::size_t rank() const noexcept { return unit_factors + nontrivial.size() + oversized.size(); }
  /// d_1 | d_2 | ... of the nonzero invariant factors that fit int64.
  std::vector<std::int64_t> factors() const;
};

/// Invariant factors by unimodular row and column operations with exact
/// big-integer arithmetic.
SmithForm smith_normal_form(const SparseIntMatrix& m);

enum class Coefficients { integer, rational, mod2 };

const char* to_string(Coefficients c);

struct HomologyOptions {
  /// integer: rational ranks plus Smith-form torsion; rational: ranks only;
  /// mod2: ranks over GF(2).
  Coefficients coefficients = Coefficients::integer;
};

struct HomologyReport {
  Coefficients coefficients = Coefficients::integer;
  std::vector<std::size_t> simplex_counts;   ///< c_0 .. c_max
  std::vector<std::size_t> boundary_ranks;   ///< index k: rank of the k-th boundary map; [0] = 0
  std::vector<std::int64_t> betti;           ///< b_0 .. b_max
  std::map<int, std::vector<std::int64_t>> torsion;  ///< dimension -> factors > 1
  std::int64_t euler = 0;
  /// Smith ranks equal the rational ranks (integer mode only; true otherwise).
  bool snf_consistent = true;
};

/// Homology of the complex in dimensions 0..max_dim. The top dimension has
/// no boundary from above, so b_max counts all top cycles.
HomologyReport betti_numbers(const SimplicialComplex& c, const HomologyOptions& opts = {});

}  // namespace semihom
