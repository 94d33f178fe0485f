// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "semihom/covering.hpp"

namespace semihom {

/// Vertex list in strictly increasing order.
class Simplex {
 public:
  Simplex() = default;
  /// Sorts the input; throws InputError on repeated vertices.
  explicit Simplex(std::vector<std::uint32_t> vertices);
  Simplex(std::initializer_list<std::uint32_t> vertices)
      : Simplex(std::vector<std::uint32_t>(vertices)) {}

  const std::vector<std::uint32_t>& vertices() const noexcept { return v_; }
  int dimension() const noexcept { return static_cast<int>(v_.size()) - 1; }
  std::uint32_t operator[](std::size_t i) const { return v_[i]; }
  /// The face that omits vertex i.
  Simplex facet(std::size_t i) const;

  auto operator<=>(const Simplex&) const = default;

 private:
  std::vector<std::uint32_t> v_;
};

/// Simplices grouped by dimension. Each dimension is stored as one flat,
/// lexicographically sorted array of vertex tuples.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  explicit SimplicialComplex(int max_dim);

  /// Dimension cap; simplices above it are rejected.
  int max_dim() const noexcept { return max_dim_; }
  /// Highest dimension holding a simplex, -1 for the empty complex.
  int top_dim() const noexcept;
  std::size_t count(int k) const noexcept;
  std::size_t total() const noexcept;

  std::span<const std::uint32_t> simplex(int k, std::size_t i) const;
  Simplex simplex_at(int k, std::size_t i) const;
  /// Position of a simplex within its dimension.
  std::optional<std::size_t> index_of(std::span<const std::uint32_t> vertices) const;
  bool contains(const Simplex& s) const { return index_of(s.vertices()).has_value(); }

  /// Appends without re-sorting; call normalize() before lookups unless
  /// simplices were added in lexicographic order.
  void add(const Simplex& s);
  void normalize();

  /// Exhaustive facet check.
  bool is_downward_closed() const;

  /// All faces of the given simplices (truncated at max_dim; -1 means the
  /// largest input dimension).
  static SimplicialComplex closure(const std::vector<Simplex>& generators, int max_dim = -1);

  bool operator==(const SimplicialComplex& o) const { return flat_ == o.flat_; }

  /// Union with vertex ids of `other` shifted past this complex's vertices.
  SimplicialComplex disjoint_union(const SimplicialComplex& other) const;

 private:
  friend SimplicialComplex build_nerve(std::span<const Vec>, std::span<const double>, int, double, int);

  int max_dim_ = 0;
  std::vector<std::vector<std::uint32_t>> flat_;
};

/// Closed-ball intersection test: true iff the balls B(c_i, r_i + tol')
/// share a point, tol' = tol (1 + max r_i). Two balls use the closed form
/// ||c_1 - c_2|| <= r_1 + r_2 + tol'.
bool balls_intersect(std::span<const Vec> centers, std::span<const double> radii, double tol = 1e-9);

/// Same predicate through the convex program only (no two-ball shortcut).
bool balls_intersect_convex(std::span<const Vec> centers, std::span<const double> radii,
                            double tol = 1e-9);

/// min over y of max_i (||y - c_i|| - r_i), by bisection on the convex
/// feasibility test. Accurate to about 1e-12 (1 + max |c_i| + max r_i).
double intersection_gap(std::span<const Vec> centers, std::span<const double> radii);

/// Nerve of B(c_i, r_i), up to dimension max_dim.
SimplicialComplex build_nerve(std::span<const Vec> centers, std::span<const double> radii,
                              int max_dim, double tol = 1e-9, int threads = 1);

/// Nerve of the eps-balls of a weighted set (Euclidean balls in R^{n+1}).
SimplicialComplex build_nerve(const WeightedBallSet& w, int max_dim, double tol = 1e-9,
                              int threads = 1);

}  // namespace semihom
