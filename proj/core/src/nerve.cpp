// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#include "semihom/nerve.hpp"

#include <algorithm>
#include <bit>
#include <iterator>
#include <cmath>
#include <limits>
#include <string>

#include "semihom/error.hpp"
#include "semihom/parallel.hpp"
#include "semihom/point_index.hpp"

namespace semihom {

Simplex::Simplex(std::vector<std::uint32_t> vertices) : v_(std::move(vertices)) {
  std::sort(v_.begin(), v_.end());
  if (std::adjacent_find(v_.begin(), v_.end()) != v_.end())
    throw InputError("simplex has a repeated vertex");
}

Simplex Simplex::facet(std::size_t i) const {
  Simplex f;
  f.v_.reserve(v_.size() - 1);
  for (std::size_t j = 0; j < v_.size(); ++j)
    if (j != i) f.v_.push_back(v_[j]);
  return f;
}

SimplicialComplex::SimplicialComplex(int max_dim) : max_dim_(max_dim) {
  if (max_dim < 0) throw InputError("simplicial complex: max_dim must be >= 0");
  flat_.resize(static_cast<std::size_t>(max_dim) + 1);
}

int SimplicialComplex::top_dim() const noexcept {
  for (int k = static_cast<int>(flat_.size()) - 1; k >= 0; --k)
    if (!flat_[static_cast<std::size_t>(k)].empty()) return k;
  return -1;
}

std::size_t SimplicialComplex::count(int k) const noexcept {
  if (k < 0 || k >= static_cast<int>(flat_.size())) return 0;
  return flat_[static_cast<std::size_t>(k)].size() / static_cast<std::size_t>(k + 1);
}

std::size_t SimplicialComplex::total() const noexcept {
  std::size_t t = 0;
  for (int k = 0; k < static_cast<int>(flat_.size()); ++k) t += count(k);
  return t;
}

std::span<const std::uint32_t> SimplicialComplex::simplex(int k, std::size_t i) const {
  const auto width = static_cast<std::size_t>(k + 1);
  return std::span<const std::uint32_t>(flat_.at(static_cast<std::size_t>(k)).data() + i * width, width);
}

Simplex SimplicialComplex::simplex_at(int k, std::size_t i) const {
  const auto s = simplex(k, i);
  return Simplex(std::vector<std::uint32_t>(s.begin(), s.end()));
}

std::optional<std::size_t> SimplicialComplex::index_of(std::span<const std::uint32_t> vertices) const {
  const int k = static_cast<int>(vertices.size()) - 1;
  if (k < 0 || k >= static_cast<int>(flat_.size())) return std::nullopt;
  std::size_t lo = 0, hi = count(k);
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const auto s = simplex(k, mid);
    if (std::lexicographical_compare(s.begin(), s.end(), vertices.begin(), vertices.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < count(k)) {
    const auto s = simplex(k, lo);
    if (std::equal(s.begin(), s.end(), vertices.begin())) return lo;
  }
  return std::nullopt;
}

void SimplicialComplex::add(const Simplex& s) {
  const int k = s.dimension();
  if (k < 0) throw InputError("simplicial complex: empty simplex");
  if (k > max_dim_)
    throw InputError("simplicial complex: simplex of dimension " + std::to_string(k) +
                     " exceeds max_dim " + std::to_string(max_dim_));
  auto& f = flat_[static_cast<std::size_t>(k)];
  f.insert(f.end(), s.vertices().begin(), s.vertices().end());
}

void SimplicialComplex::normalize() {
  for (int k = 0; k < static_cast<int>(flat_.size()); ++k) {
    const std::size_t n = count(k), w = static_cast<std::size_t>(k + 1);
    std::vector<std::vector<std::uint32_t>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto s = simplex(k, i);
      rows[i].assign(s.begin(), s.end());
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    auto& f = flat_[static_cast<std::size_t>(k)];
    f.clear();
    f.reserve(rows.size() * w);
    for (const auto& r : rows) f.insert(f.end(), r.begin(), r.end());
  }
}

bool SimplicialComplex::is_downward_closed() const {
  std::vector<std::uint32_t> face;
  for (int k = 1; k < static_cast<int>(flat_.size()); ++k) {
    for (std::size_t i = 0; i < count(k); ++i) {
      const auto s = simplex(k, i);
      for (std::size_t omit = 0; omit < s.size(); ++omit) {
        face.clear();
        for (std::size_t j = 0; j < s.size(); ++j)
          if (j != omit) face.push_back(s[j]);
        if (!index_of(face)) return false;
      }
    }
  }
  return true;
}

SimplicialComplex SimplicialComplex::closure(const std::vector<Simplex>& generators, int max_dim) {
  if (max_dim < 0) {
    max_dim = 0;
    for (const auto& g : generators) max_dim = std::max(max_dim, g.dimension());
  }
  SimplicialComplex c(max_dim);
  for (const auto& g : generators) {
    const auto& v = g.vertices();
    const std::size_t m = v.size();
    if (m > 30) throw InputError("closure: simplex too large to enumerate faces");
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
      if (std::popcount(mask) > max_dim + 1) continue;
      std::vector<std::uint32_t> face;
      for (std::size_t j = 0; j < m; ++j)
        if (mask & (1u << j)) face.push_back(v[j]);
      c.add(Simplex(std::move(face)));
    }
  }
  c.normalize();
  return c;
}

SimplicialComplex SimplicialComplex::disjoint_union(const SimplicialComplex& other) const {
  SimplicialComplex out(std::max(max_dim_, other.max_dim_));
  std::uint32_t shift = 0;
  for (int k = 0; k <= max_dim_; ++k)
    for (std::uint32_t v : flat_[static_cast<std::size_t>(k)]) shift = std::max(shift, v + 1);
  for (int k = 0; k <= max_dim_; ++k) out.flat_[static_cast<std::size_t>(k)] = flat_[static_cast<std::size_t>(k)];
  for (int k = 0; k <= other.max_dim_; ++k)
    for (std::uint32_t v : other.flat_[static_cast<std::size_t>(k)])
      out.flat_[static_cast<std::size_t>(k)].push_back(v + shift);
  out.normalize();
  return out;
}

namespace {

void check_balls(std::span<const Vec> centers, std::span<const double> radii) {
  if (centers.empty() || centers.size() != radii.size())
    throw InputError("balls_intersect: need equally many (>= 1) centers and radii");
  for (double r : radii)
    if (!(r > 0.0) || !std::isfinite(r)) throw InputError("balls_intersect: radii must be positive");
  for (const Vec& c : centers)
    if (c.size() != centers[0].size()) throw InputError("balls_intersect: centers differ in dimension");
}

double effective_tol(std::span<const double> radii, double tol) {
  return tol * (1.0 + *std::max_element(radii.begin(), radii.end()));
}

// Decides whether the closed balls B(c_i, R_i) share a point by solving
//   min_y max_i ||y - c_i||^2 - R_i^2
// through its dual  max_{lambda in simplex} b^T lambda - ||C lambda||^2,
// b_i = ||c_i||^2 - R_i^2, enumerating supports of size <= dim + 1.
bool feasible(std::span<const Vec> centers, std::span<const double> big_r) {
  const std::size_t k = centers.size();
  const Eigen::Index dim = centers[0].size();
  Vec mean = Vec::Zero(dim);
  for (const Vec& c : centers) mean += c;
  mean /= static_cast<double>(k);
  Mat cm(dim, static_cast<Eigen::Index>(k));
  Vec b(static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    cm.col(ii) = centers[i] - mean;
    b[ii] = cm.col(ii).squaredNorm() - big_r[i] * big_r[i];
  }
  const Mat gram = cm.transpose() * cm;

  auto primal = [&](const Vec& y) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i)
      worst = std::max(worst, (y - cm.col(static_cast<Eigen::Index>(i))).squaredNorm() - big_r[i] * big_r[i]);
    return worst;
  };

  const std::size_t max_support = std::min<std::size_t>(k, static_cast<std::size_t>(dim) + 1);
  double best_primal = std::numeric_limits<double>::infinity();
  double best_dual = -std::numeric_limits<double>::infinity();
  std::vector<Eigen::Index> support;
  if (k > 20) throw InputError("balls_intersect: more than 20 balls in one test");
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    const auto m = static_cast<std::size_t>(std::popcount(mask));
    if (m > max_support) continue;
    support.clear();
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (1u << i)) support.push_back(static_cast<Eigen::Index>(i));
    const auto ms = static_cast<Eigen::Index>(m);
    Mat kkt = Mat::Zero(ms + 1, ms + 1);
    Vec rhs(ms + 1);
    for (Eigen::Index a = 0; a < ms; ++a) {
      for (Eigen::Index c = 0; c < ms; ++c) kkt(a, c) = 2.0 * gram(support[a], support[c]);
      kkt(a, ms) = 1.0;
      kkt(ms, a) = 1.0;
      rhs[a] = b[support[a]];
    }
    rhs[ms] = 1.0;
    Eigen::FullPivLU<Mat> lu(kkt);
    if (!lu.isInvertible()) continue;
    const Vec sol = lu.solve(rhs);
    Vec lambda = Vec::Zero(static_cast<Eigen::Index>(k));
    bool nonneg = true;
    for (Eigen::Index a = 0; a < ms; ++a) {
      if (sol[a] < -1e-14) nonneg = false;
      lambda[support[a]] = std::max(sol[a], 0.0);
    }
    if (!nonneg) continue;
    lambda /= lambda.sum();
    const Vec y = cm * lambda;
    best_primal = std::min(best_primal, primal(y));
    best_dual = std::max(best_dual, b.dot(lambda) - y.squaredNorm());
  }
  if (best_primal <= 0.0) return true;  // witness point found
  if (best_dual > 0.0) return false;    // dual certificate of emptiness
  return true;                          // both within rounding of zero
}

}  // namespace

bool balls_intersect_convex(std::span<const Vec> centers, std::span<const double> radii, double tol) {
  check_balls(centers, radii);
  const double t = effective_tol(radii, tol);
  std::vector<double> big_r(radii.begin(), radii.end());
  for (double& r : big_r) r += t;
  return feasible(centers, big_r);
}

bool balls_intersect(std::span<const Vec> centers, std::span<const double> radii, double tol) {
  check_balls(centers, radii);
  if (centers.size() == 1) return true;
  if (centers.size() == 2)
    return (centers[0] - centers[1]).norm() <= radii[0] + radii[1] + effective_tol(radii, tol);
  return balls_intersect_convex(centers, radii, tol);
}

double intersection_gap(std::span<const Vec> centers, std::span<const double> radii) {
  check_balls(centers, radii);
  // Bracket t so that the balls B(c_i, r_i + t) go from disjoint to meeting.
  // The objective is at least -min r_i, so t never drives a radius negative.
  double span = 0.0, rmax = 0.0, rmin = radii[0];
  for (const Vec& c : centers) span = std::max(span, (c - centers[0]).norm());
  for (double r : radii) {
    rmax = std::max(rmax, r);
    rmin = std::min(rmin, r);
  }
  double lo = -rmin, hi = span + 1e-300;
  auto meets = [&](double t) {
    std::vector<double> big_r(radii.begin(), radii.end());
    for (double& r : big_r) r += t;
    return feasible(centers, big_r);
  };
  if (centers.size() == 1) return -radii[0];
  for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + span + rmax); ++it) {
    const double mid = 0.5 * (lo + hi);
    (meets(mid) ? hi : lo) = mid;
  }
  return hi;
}

SimplicialComplex build_nerve(std::span<const Vec> centers, std::span<const double> radii, int max_dim,
                              double tol, int threads) {
  if (max_dim < 0) throw InputError("build_nerve: max_dim must be >= 0");
  if (centers.size() != radii.size()) throw InputError("build_nerve: centers and radii differ in length");
  const std::size_t n = centers.size();
  SimplicialComplex cx(max_dim);
  if (n == 0) return cx;
  check_balls(centers, radii);

  auto& verts = cx.flat_[0];
  verts.resize(n);
  for (std::size_t i = 0; i < n; ++i) verts[i] = static_cast<std::uint32_t>(i);
  if (max_dim == 0) return cx;

  double rmax = 0.0;
  for (double r : radii) rmax = std::max(rmax, r);
  PointIndex index(static_cast<int>(centers[0].size()), 2.0 * rmax);
  for (const Vec& c : centers) index.insert(c);

  // Forward adjacency: j > i with intersecting balls.
  std::vector<std::vector<std::uint32_t>> forward(n);
  detail::parallel_for(n, threads, [&](std::size_t i) {
    const double reach = radii[i] + rmax + 2.0 * tol * (1.0 + rmax);
    index.for_each_within(centers[i], reach, [&](std::uint32_t j, double) {
      if (j <= i) return;
      const Vec pair_c[2] = {centers[i], centers[j]};
      const double pair_r[2] = {radii[i], radii[j]};
      if (balls_intersect(pair_c, pair_r, tol)) forward[i].push_back(j);
    });
    std::sort(forward[i].begin(), forward[i].end());
  });
  for (std::size_t i = 0; i < n; ++i)
    for (std::uint32_t j : forward[i]) {
      cx.flat_[1].push_back(static_cast<std::uint32_t>(i));
      cx.flat_[1].push_back(j);
    }

  for (int k = 2; k <= max_dim; ++k) {
    const std::size_t lower = cx.count(k - 1);
    if (lower == 0) break;
    std::vector<std::vector<std::uint32_t>> found(lower);
    detail::parallel_for(lower, threads, [&](std::size_t s) {
      const auto sigma = cx.simplex(k - 1, s);
      // Common forward neighbors of every vertex, beyond the last vertex.
      std::vector<std::uint32_t> common = forward[sigma[0]];
      std::vector<std::uint32_t> tmp;
      for (std::size_t a = 1; a < sigma.size() && !common.empty(); ++a) {
        tmp.clear();
        std::set_intersection(common.begin(), common.end(), forward[sigma[a]].begin(),
                              forward[sigma[a]].end(), std::back_inserter(tmp));
        common.swap(tmp);
      }
      std::vector<std::uint32_t> face(static_cast<std::size_t>(k));
      std::vector<Vec> cs(static_cast<std::size_t>(k) + 1);
      std::vector<double> rs(static_cast<std::size_t>(k) + 1);
      for (std::uint32_t v : common) {
        if (v <= sigma.back()) continue;
        // Faces containing v must already be present (apriori pruning);
        // for triangles they are edges, implied by adjacency.
        bool faces_ok = true;
        if (k >= 3) {
          for (std::size_t omit = 0; omit < sigma.size() && faces_ok; ++omit) {
            std::size_t w = 0;
            for (std::size_t a = 0; a < sigma.size(); ++a)
              if (a != omit) face[w++] = sigma[a];
            face[w] = v;
            faces_ok = cx.index_of(face).has_value();
          }
        }
        if (!faces_ok) continue;
        for (std::size_t a = 0; a < sigma.size(); ++a) {
          cs[a] = centers[sigma[a]];
          rs[a] = radii[sigma[a]];
        }
        cs.back() = centers[v];
        rs.back() = radii[v];
        if (balls_intersect(cs, rs, tol)) found[s].push_back(v);
      }
    });
    auto& out = cx.flat_[static_cast<std::size_t>(k)];
    for (std::size_t s = 0; s < lower; ++s) {
      const auto sigma = cx.simplex(k - 1, s);
      for (std::uint32_t v : found[s]) {
        out.insert(out.end(), sigma.begin(), sigma.end());
        out.push_back(v);
      }
    }
  }
  return cx;
}

SimplicialComplex build_nerve(const WeightedBallSet& w, int max_dim, double tol, int threads) {
  std::vector<Vec> centers;
  std::vector<double> radii;
  centers.reserve(w.balls.size());
  radii.reserve(w.balls.size());
  for (const auto& b : w.balls) {
    centers.push_back(b.center);
    radii.push_back(b.eps);
  }
  return build_nerve(centers, radii, max_dim, tol, threads);
}

}  // namespace semihom
