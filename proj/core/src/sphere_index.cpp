// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#include "semihom/point_index.hpp"

#include "semihom/error.hpp"

namespace semihom {

PointIndex::PointIndex(int dim, double cell) : dim_(dim), cell_(cell) {
  if (dim < 1 || !(cell > 0.0)) throw InputError("PointIndex: bad dimension or cell size");
}

std::uint64_t PointIndex::key(const std::int64_t* c) const {
  std::uint64_t h = 0x84222325cbf29ce4ULL;
  for (int i = 0; i < dim_; ++i) {
    h ^= static_cast<std::uint64_t>(c[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
  }
  return h;
}

std::uint32_t PointIndex::insert(const Vec& p) {
  if (p.size() != dim_) throw InputError("PointIndex: dimension mismatch");
  const auto id = static_cast<std::uint32_t>(size());
  std::vector<std::int64_t> c(dim_);
  for (int i = 0; i < dim_; ++i) {
    coords_.push_back(p[i]);
    c[i] = cell_of(p[i]);
  }
  cells_[key(c.data())].push_back(id);
  return id;
}

bool PointIndex::any_closer_than(const Vec& q, double radius) const {
  bool found = false;
  const double r2 = radius * radius;
  for_each_within(q, radius, [&](std::uint32_t, double d2) {
    if (d2 < r2) found = true;
  });
  return found;
}

}  // namespace semihom
