// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <vector>

#include "semihom/point_index.hpp"
#include "semihom/polynomial.hpp"

namespace semihom {

/// d_S(x, y) = arccos(clamp(<x, y>, -1, 1)).
double geodesic_distance(const Vec& x, const Vec& y);

/// Euclidean chord length subtending geodesic angle theta (capped at 2).
double chord_for_geodesic(double theta);

inline constexpr std::size_t kNoGridIndex = std::numeric_limits<std::size_t>::max();

struct SphericalBall {
  Vec center;
  double radius = 0.0;  ///< geodesic
  int level = -1;       ///< grid level k, or -1 for free-standing balls
  std::size_t index = kNoGridIndex;  ///< position in the level's center list
};

struct GridParams {
  /// Minimum candidate-pool size per level; 0 picks it automatically.
  std::size_t pool_size = 0;
  std::uint64_t seed = 0;
  int level_cap = 40;
  /// Refuse to build a level whose estimated packing number exceeds this.
  std::size_t max_grid_points = 20'000'000;
  int threads = 1;
};

/// A 2^{-k}-separated set J_k on S^n, maximal on the whole sphere: every
/// point of S^n lies within geodesic distance 2^{-k} of some center.
struct GridLevel {
  int n = 0;
  int k = 0;
  std::vector<Vec> centers;
  PointIndex index;
  std::size_t pool_points = 0;  ///< lattice candidates visited
  std::size_t repairs = 0;      ///< centers added by hole repair

  double separation() const;
  std::size_t size() const noexcept { return centers.size(); }
  SphericalBall ball(std::size_t i) const;
};

/// Greedy separated set over a randomly rotated, randomly ordered lattice on
/// the cube surface, followed by an exact hole repair that inserts any
/// spherical circumcenter farther than 2^{-k} from every center.
GridLevel build_grid(int n, int k, const GridParams& params);

/// Estimated packing number 2^{nk}-scale count used for configuration checks.
double estimated_packing_number(int n, int k);

/// Lazily built, cached grid levels J_0, J_1, ... for one (n, params).
class GridHierarchy {
 public:
  GridHierarchy(int n, GridParams params);

  int n() const noexcept { return n_; }
  const GridParams& params() const noexcept { return params_; }
  const GridLevel& level(int k);
  int built_levels() const noexcept { return static_cast<int>(levels_.size()); }

 private:
  int n_;
  GridParams params_;
  std::vector<std::unique_ptr<GridLevel>> levels_;
};

/// Level-(k+1) balls whose centers are within 2^{-k} + 2^{-(k+1)} of c_B,
/// sorted by grid index. B must be a level-k grid ball.
std::vector<SphericalBall> divide(const SphericalBall& b, const GridLevel& next);

using SphereFunction = std::function<double(const Vec&)>;

struct CoverOutput {
  int n = 0;
  std::vector<SphericalBall> balls;  ///< final balls, ordered by (level, index)
  int levels_used = 0;
  std::size_t f_evaluations = 0;  ///< sum over k of #L_k
  std::vector<std::size_t> visited_per_level;  ///< #L_k
  std::vector<std::size_t> final_per_level;
  std::size_t divide_calls = 0;
  std::size_t max_divide = 0;
  double lipschitz_constant = 0.0;
};

/// Adaptive cover: a ball is final when r_B < f(c_B), otherwise it is
/// replaced by divide(B). f must map into (0, 1].
CoverOutput cover(const SphereFunction& f, double lipschitz_constant, GridHierarchy& grids);
CoverOutput cover(const SphereFunction& f, double lipschitz_constant, int n,
                  const GridParams& params);

}  // namespace semihom
