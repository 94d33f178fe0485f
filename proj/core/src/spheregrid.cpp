// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#include "semihom/spheregrid.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iterator>
#include <numbers>
#include <string>

#include "semihom/error.hpp"
#include "semihom/parallel.hpp"
#include "semihom/random.hpp"

namespace semihom {

double geodesic_distance(const Vec& x, const Vec& y) {
  return std::acos(std::clamp(x.dot(y), -1.0, 1.0));
}

double chord_for_geodesic(double theta) {
  if (theta >= std::numbers::pi) return 2.0;
  return 2.0 * std::sin(0.5 * std::max(theta, 0.0));
}

double GridLevel::separation() const { return std::ldexp(1.0, -k); }

SphericalBall GridLevel::ball(std::size_t i) const {
  return SphericalBall{centers.at(i), separation(), k, i};
}

double estimated_packing_number(int n, int k) {
  // area(S^n) / volume of an n-ball of radius 2^{-k-1}
  const double area = 2.0 * std::pow(std::numbers::pi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
  const double unit_ball = std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
  return area / (unit_ball * std::pow(std::ldexp(1.0, -k - 1), n));
}

namespace {

// Unit vectors equidistant from all of `pts` (n+1 points on S^n); empty when
// the points are affinely degenerate.
std::vector<Vec> circumcenters(const std::vector<Vec>& pts) {
  const Eigen::Index dim = pts[0].size();
  Vec u;
  if (dim == 2) {
    const Vec d = pts[1] - pts[0];
    if (d.norm() < 1e-14) return {};
    u = Vec(2);
    u << -d[1], d[0];
  } else if (dim == 3) {
    const Eigen::Vector3d a = pts[1] - pts[0];
    const Eigen::Vector3d b = pts[2] - pts[0];
    const Eigen::Vector3d c = a.cross(b);
    if (c.norm() < 1e-14 * std::max(1e-300, a.norm() * b.norm())) return {};
    u = c;
  } else {
    Mat diff(dim - 1, dim);
    for (Eigen::Index i = 1; i < dim; ++i) diff.row(i - 1) = (pts[i] - pts[0]).transpose();
    Eigen::JacobiSVD<Mat> svd(diff, Eigen::ComputeFullV);
    const Vec& sv = svd.singularValues();
    if (sv[sv.size() - 1] <= 1e-12 * sv[0]) return {};
    u = svd.matrixV().col(dim - 1);
  }
  u.normalize();
  return {u, -u};
}

class GridBuilder {
 public:
  GridBuilder(int n, int k, const GridParams& params)
      : n_(n), k_(k), sep_(std::ldexp(1.0, -k)), chord_sep_(chord_for_geodesic(sep_)),
        params_(params) {}

  GridLevel run() {
    GridLevel level;
    level.n = n_;
    level.k = k_;
    level.index = PointIndex(n_ + 1, chord_sep_);
    greedy_from_pool(level);
    repair(level);
    return level;
  }

 private:
  bool covered(const GridLevel& level, const Vec& p) const {
    // d(p, J) <= sep, with a relative slack for rounding.
    return level.index.any_closer_than(p, chord_sep_ * (1.0 + 1e-12));
  }

  void add(GridLevel& level, const Vec& p) {
    level.centers.push_back(p);
    level.index.insert(p);
  }

  void greedy_from_pool(GridLevel& level) {
    // Lattice on the cube surface [-1, 1]^{n+1}; radial projection is
    // 1-Lipschitz there, so the pool's covering radius is bounded by the
    // face covering radius h sqrt(n) / 2.
    pool_radius_ = 0.5 * sep_;
    const double h_target = 2.0 * chord_for_geodesic(pool_radius_) / std::sqrt(static_cast<double>(n_));
    std::size_t m = static_cast<std::size_t>(std::ceil(2.0 / h_target));
    const std::size_t faces = 2 * static_cast<std::size_t>(n_ + 1);
    auto count_for = [&](std::size_t mm) {
      double c = static_cast<double>(faces);
      for (int i = 0; i < n_; ++i) c *= static_cast<double>(mm + 1);
      return c;
    };
    if (params_.pool_size > 0) {
      while (count_for(m) < static_cast<double>(params_.pool_size)) ++m;
    }
    const double total = count_for(m);
    if (total > 4.0e9) throw ConfigError("grid level " + std::to_string(k_) + " needs too many candidates");
    const std::size_t per_face = static_cast<std::size_t>(total) / faces;

    Rng rng = Rng(params_.seed, 0x67726964).split(static_cast<std::uint64_t>(k_));
    const Mat rotation = rng.orthogonal(n_ + 1);
    std::vector<std::uint32_t> order(static_cast<std::size_t>(total));
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::uint32_t>(i);
    rng.shuffle(order);

    Vec cube(n_ + 1);
    for (std::uint32_t id : order) {
      const std::size_t face = id / per_face;
      std::size_t local = id % per_face;
      const std::size_t axis = face / 2;
      for (int i = 0; i <= n_; ++i) {
        if (static_cast<std::size_t>(i) == axis) {
          cube[i] = (face % 2) ? 1.0 : -1.0;
          continue;
        }
        const std::size_t digit = local % (m + 1);
        local /= (m + 1);
        cube[i] = -1.0 + 2.0 * static_cast<double>(digit) / static_cast<double>(m);
      }
      Vec p = rotation * cube;
      p.normalize();
      if (!level.index.any_closer_than(p, chord_sep_)) add(level, p);
    }
    level.pool_points = order.size();
  }

  // Every local maximum of d(., J) on S^n sits at a point equidistant from
  // n+1 centers. After the pool pass d(., J) < sep + pool_radius, so those
  // centers are pairwise within 2 (sep + pool_radius).
  void repair(GridLevel& level) {
    const double reach = std::min(std::numbers::pi, 2.0 * (sep_ + pool_radius_)) + 1e-9;
    const double chord_reach = chord_for_geodesic(reach);
    for (int round = 0;; ++round) {
      std::size_t added = 0;
      for (;;) {
        const std::size_t pass = repair_pass(level, chord_reach);
        added += pass;
        if (pass == 0) break;
      }
      // Sampled check for degenerate configurations the circumcenter scan
      // cannot see (too few centers to form an (n+1)-tuple).
      Rng rng = Rng(params_.seed, 0x6d63).split(static_cast<std::uint64_t>(k_ * 1000 + round));
      std::size_t sampled = 0;
      for (int t = 0; t < 4096; ++t) {
        const Vec p = rng.on_sphere(n_ + 1);
        if (!covered(level, p)) {
          add(level, p);
          ++sampled;
        }
      }
      level.repairs += added + sampled;
      if (sampled == 0) break;
    }
  }

  std::size_t repair_pass(GridLevel& level, double chord_reach) {
    const std::size_t count = level.centers.size();
    PointIndex wide(n_ + 1, chord_reach);
    for (const Vec& c : level.centers) wide.insert(c);
    std::vector<std::vector<std::uint32_t>> forward(count);
    for (std::size_t i = 0; i < count; ++i) {
      wide.for_each_within(level.centers[i], chord_reach, [&](std::uint32_t j, double) {
        if (j > i) forward[i].push_back(j);
      });
      std::sort(forward[i].begin(), forward[i].end());
    }

    std::size_t added = 0;
    std::vector<std::uint32_t> tuple;
    std::vector<Vec> points;
    const int need = n_ + 1;
    // Depth-first clique enumeration in the forward-neighbor graph.
    std::function<void(const std::vector<std::uint32_t>&)> extend =
        [&](const std::vector<std::uint32_t>& candidates) {
          if (static_cast<int>(tuple.size()) == need) {
            points.clear();
            for (std::uint32_t v : tuple) points.push_back(level.centers[v]);
            for (const Vec& u : circumcenters(points)) {
              if (!covered(level, u)) {
                add(level, u);
                ++added;
              }
            }
            return;
          }
          for (std::uint32_t v : candidates) {
            tuple.push_back(v);
            std::vector<std::uint32_t> next;
            if (static_cast<int>(tuple.size()) < need) {
              std::set_intersection(candidates.begin(), candidates.end(), forward[v].begin(),
                                    forward[v].end(), std::back_inserter(next));
            }
            if (static_cast<int>(tuple.size()) == need || !next.empty()) extend(next);
            tuple.pop_back();
          }
        };
    for (std::size_t i = 0; i < count; ++i) {
      tuple.assign(1, static_cast<std::uint32_t>(i));
      extend(forward[i]);
    }
    return added;
  }

  int n_;
  int k_;
  double sep_;
  double chord_sep_;
  double pool_radius_ = 0.0;
  GridParams params_;
};

}  // namespace

GridLevel build_grid(int n, int k, const GridParams& params) {
  if (n < 1) throw InputError("build_grid: n must be >= 1");
  if (k < 0) throw InputError("build_grid: k must be >= 0");
  const double packing = estimated_packing_number(n, k);
  if (params.pool_size > 0 && static_cast<double>(params.pool_size) < std::ldexp(1.0, n * k))
    throw ConfigError("build_grid: pool of " + std::to_string(params.pool_size) +
                      " candidates is below the packing estimate 2^{nk} = " +
                      std::to_string(std::ldexp(1.0, n * k)));
  if (packing > static_cast<double>(params.max_grid_points))
    throw NonterminationError("build_grid: level " + std::to_string(k) + " on S^" +
                              std::to_string(n) + " needs about " +
                              std::to_string(static_cast<long long>(packing)) +
                              " centers (max_grid_points exceeded)");
  return GridBuilder(n, k, params).run();
}

GridHierarchy::GridHierarchy(int n, GridParams params) : n_(n), params_(params) {
  if (n < 1) throw InputError("GridHierarchy: n must be >= 1");
}

const GridLevel& GridHierarchy::level(int k) {
  if (k < 0) throw InputError("GridHierarchy: negative level");
  while (static_cast<int>(levels_.size()) <= k) {
    const int next = static_cast<int>(levels_.size());
    levels_.push_back(std::make_unique<GridLevel>(build_grid(n_, next, params_)));
  }
  return *levels_[static_cast<std::size_t>(k)];
}

std::vector<SphericalBall> divide(const SphericalBall& b, const GridLevel& next) {
  if (b.level < 0 || next.k != b.level + 1)
    throw InputError("divide: ball level " + std::to_string(b.level) +
                     " does not precede grid level " + std::to_string(next.k));
  const double r = std::ldexp(1.0, -b.level);
  const double reach = r + 0.5 * r + 1e-12;
  std::vector<SphericalBall> out;
  next.index.for_each_within(b.center, chord_for_geodesic(reach), [&](std::uint32_t id, double) {
    if (geodesic_distance(b.center, next.centers[id]) <= reach) out.push_back(next.ball(id));
  });
  std::sort(out.begin(), out.end(),
            [](const SphericalBall& a, const SphericalBall& c) { return a.index < c.index; });
  return out;
}

CoverOutput cover(const SphereFunction& f, double lipschitz_constant, GridHierarchy& grids) {
  if (!(lipschitz_constant >= 0.0)) throw InputError("cover: Lipschitz constant must be >= 0");
  const GridParams& params = grids.params();
  CoverOutput out;
  out.n = grids.n();
  out.lipschitz_constant = lipschitz_constant;

  const GridLevel* level = &grids.level(0);
  std::vector<std::size_t> todo(level->size());
  for (std::size_t i = 0; i < todo.size(); ++i) todo[i] = i;
  int k = 0;
  std::vector<double> values;
  while (!todo.empty()) {
    values.assign(todo.size(), 0.0);
    detail::parallel_for(todo.size(), params.threads,
                         [&](std::size_t i) { values[i] = f(level->centers[todo[i]]); });
    out.visited_per_level.push_back(todo.size());
    out.final_per_level.push_back(0);
    out.f_evaluations += todo.size();
    out.levels_used = k;

    const double radius = level->separation();
    std::vector<std::size_t> next;
    const GridLevel* child = nullptr;
    for (std::size_t i = 0; i < todo.size(); ++i) {
      const double v = values[i];
      if (!(v > 0.0) || !std::isfinite(v))
        throw InputError("cover: f must take finite positive values (got " + std::to_string(v) + ")");
      if (radius < v) {
        out.balls.push_back(level->ball(todo[i]));
        ++out.final_per_level.back();
        continue;
      }
      if (child == nullptr) {
        if (k + 1 > params.level_cap)
          throw NonterminationError("cover: level cap " + std::to_string(params.level_cap) +
                                    " exceeded (inf f is too small)");
        child = &grids.level(k + 1);
      }
      const auto parts = divide(level->ball(todo[i]), *child);
      ++out.divide_calls;
      out.max_divide = std::max(out.max_divide, parts.size());
      for (const auto& b : parts) next.push_back(b.index);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    todo = std::move(next);
    if (!todo.empty()) {
      level = child;
      ++k;
    }
  }
  return out;
}

CoverOutput cover(const SphereFunction& f, double lipschitz_constant, int n, const GridParams& params) {
  GridHierarchy grids(n, params);
  return cover(f, lipschitz_constant, grids);
}

}  // namespace semihom
