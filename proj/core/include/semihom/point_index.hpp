// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "semihom/polynomial.hpp"

namespace semihom {

/// Uniform hash grid over points in R^dim for fixed-radius neighbor queries.
class PointIndex {
 public:
  PointIndex() = default;
  PointIndex(int dim, double cell);

  int dim() const noexcept { return dim_; }
  double cell() const noexcept { return cell_; }
  std::size_t size() const noexcept { return coords_.size() / static_cast<std::size_t>(dim_); }

  /// Points get ids 0, 1, 2, ... in insertion order.
  std::uint32_t insert(const Vec& p);

  const double* point(std::uint32_t id) const { return coords_.data() + static_cast<std::size_t>(id) * dim_; }

  /// Calls visit(id, squared_distance) for every stored point with
  /// ||p - q|| <= radius. Visiting order is unspecified.
  template <class Visitor>
  void for_each_within(const Vec& q, double radius, Visitor&& visit) const {
    if (coords_.empty()) return;
    const double r2 = radius * radius;
    std::vector<std::int64_t> lo(dim_), hi(dim_), cur(dim_);
    for (int i = 0; i < dim_; ++i) {
      lo[i] = cell_of(q[i] - radius);
      hi[i] = cell_of(q[i] + radius);
    }
    cur = lo;
    for (;;) {
      auto it = cells_.find(key(cur.data()));
      if (it != cells_.end()) {
        for (std::uint32_t id : it->second) {
          const double* p = point(id);
          double d2 = 0.0;
          for (int i = 0; i < dim_; ++i) {
            const double t = p[i] - q[i];
            d2 += t * t;
          }
          if (d2 <= r2) visit(id, d2);
        }
      }
      int axis = 0;
      while (axis < dim_ && cur[axis] == hi[axis]) {
        cur[axis] = lo[axis];
        ++axis;
      }
      if (axis == dim_) break;
      ++cur[axis];
    }
  }

  /// True when some stored point satisfies ||p - q|| < radius (strict).
  bool any_closer_than(const Vec& q, double radius) const;

 private:
  std::int64_t cell_of(double v) const { return static_cast<std::int64_t>(std::floor(v / cell_)); }
  std::uint64_t key(const std::int64_t* c) const;

  int dim_ = 0;
  double cell_ = 1.0;
  std::vector<double> coords_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> cells_;
};

}  // namespace semihom
