// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Pass criterion numbers as arguments to
// run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "semihom/condition.hpp"
#include "semihom/covering.hpp"
#include "semihom/homology.hpp"
#include "semihom/lipschitz_min.hpp"
#include "semihom/nerve.hpp"
#include "semihom/pipeline.hpp"
#include "semihom/spheregrid.hpp"
#include "support.hpp"

using namespace semihom;
namespace st = semihom::testing;

namespace {

// Pinned tolerances and limits.
constexpr double kKappaRelTol = 1e-9;
constexpr double kLipschitzSlack = 1e-9;
constexpr double kWeylRelTol = 1e-8;
constexpr double kMinimizeRelTol = 0.05;
constexpr double kEvalRatio = 0.25;
constexpr double kCoverMargin = 1e-9;
constexpr std::size_t kMaxCoverBalls = 20000;
constexpr double kWorkSpread = 4.0;
constexpr double kNerveTol = 1e-9;

constexpr double kLimit1 = 5, kLimit2 = 30, kLimit4 = 1, kLimit5 = 60, kLimit6 = 600, kLimit7 = 1800,
                 kLimit8 = 30;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

Outcome condition_suite() {
  const PolyTuple f{st::diff_of_squares()};
  const double k1 = kappa(f, st::unit({1, 0})).value();
  const double k2 = kappa(f, st::unit({1, 1})).value();
  bool ok = rel_close(k1, std::sqrt(2.0), kKappaRelTol) && rel_close(k2, 1.0, kKappaRelTol);
  Rng rng(1001);
  std::size_t finite = 0, below = 0, draws = 0;
  while (finite < 1000 && draws < 100000) {
    ++draws;
    const int n = 1 + static_cast<int>(rng.below(3));
    const auto sys = st::random_system(rng, n, 1 + rng.below(static_cast<std::uint64_t>(n)), rng.below(3),
                                       2 + static_cast<unsigned>(rng.below(3)));
    const auto k = kappa_semi(sys, rng.on_sphere(n + 1));
    if (!k.is_finite()) continue;
    ++finite;
    if (k.value() < 1.0) ++below;
  }
  ok = ok && finite == 1000 && below == 0;
  return {ok, fmt("kappa(1,0)=%.15g kappa(1,1)/sqrt2=%.15g; %zu finite samples, %zu below 1", k1, k2, finite, below)};
}

Outcome lipschitz_suite() {
  Rng rng(1002);
  double worst = -1.0;
  std::size_t pairs = 0;
  for (int t = 0; t < 10; ++t) {
    const int n = 1 + t % 2;
    const std::size_t q = t % 3 == 0 ? 0 : 1;
    const std::size_t s = q == 0 ? 1 + rng.below(2) : rng.below(3);
    const auto sys = st::random_system(rng, n, q, s, 2 + static_cast<unsigned>(rng.below(3)));
    const auto rep = kappa_inv_lipschitz_check(sys, 100, 2000 + static_cast<std::uint64_t>(t));
    worst = std::max(worst, rep.max_excess);
    pairs += rep.trials;
  }
  return {pairs == 1000 && worst <= kLipschitzSlack,
          fmt("%zu pairs on S^1 and S^2, max excess %.3g (slack %.0e)", pairs, worst, kLipschitzSlack)};
}

Outcome weyl_suite() {
  Rng rng(1003);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 3;
    const unsigned d = 1 + static_cast<unsigned>(t / 3 % 4);
    const auto p = st::random_poly(rng, static_cast<std::size_t>(n) + 1, d);
    const double a = weyl_norm(p);
    const double b = weyl_norm(rotate(p, rng.orthogonal(n + 1)));
    worst = std::max(worst, std::abs(a - b) / a);
  }
  return {worst <= kWeylRelTol, fmt("100 rotations, n<=3, d<=4, max relative change %.3g", worst)};
}

Outcome minimize_suite() {
  const auto f = *builtin_scalar_function("hinge");
  const auto a = minimize_adaptive(f, {0.0, 1.0}, 0.05);
  const auto n = minimize_nonadaptive(f, 0.05);
  double truth = f(0.0);
  for (int i = 1; i <= 1'000'000; ++i) truth = std::min(truth, f(i * 1e-6));
  const bool ok = static_cast<double>(a.evaluations) < kEvalRatio * static_cast<double>(n.evaluations) &&
                  rel_close(a.min_estimate, truth, kMinimizeRelTol) &&
                  rel_close(n.min_estimate, truth, kMinimizeRelTol);
  return {ok, fmt("evaluations adaptive %zu vs nonadaptive %zu; estimates %.6g / %.6g, oracle %.6g",
                  a.evaluations, n.evaluations, a.min_estimate, n.min_estimate, truth)};
}

Outcome cover_suite() {
  struct Case {
    int n;
    SphereFunction f;
    double lip;
  };
  const std::vector<Case> cases{
      {1, [](const Vec& x) { return std::clamp(0.05 + std::abs(x[0]), 0.0, 1.0); }, 1.0},
      {2, [](const Vec&) { return 0.3; }, 0.0}};
  bool ok = true;
  std::ostringstream os;
  for (const auto& c : cases) {
    GridParams gp;
    gp.seed = 1005;
    const auto out = cover(c.f, c.lip, c.n, gp);
    std::size_t bad_radius = 0;
    for (const auto& b : out.balls)
      if (!(b.radius < c.f(b.center))) ++bad_radius;
    const auto cc = check_cover_coverage(out, 10000, 1005);
    const auto cap = static_cast<std::size_t>(std::pow(16, c.n));
    ok = ok && bad_radius == 0 && cc.uncovered == 0 && cc.worst_margin <= kCoverMargin && out.max_divide <= cap;
    os << "S^" << c.n << ": " << out.balls.size() << " balls, " << bad_radius << " with r >= f, "
       << cc.uncovered << "/" << cc.samples << " uncovered, max divide " << out.max_divide << " <= " << cap
       << "; ";
  }
  return {ok, os.str()};
}

// Dense samples of {|x0| >= |x1|} on S^1.
std::vector<Vec> arc_samples(std::size_t per_arc) {
  std::vector<Vec> out;
  for (double base : {0.0, std::numbers::pi})
    for (std::size_t i = 0; i <= per_arc; ++i) {
      const double t = base - std::numbers::pi / 4 + (std::numbers::pi / 2) * static_cast<double>(i) / per_arc;
      Vec x(2);
      x << std::cos(t), std::sin(t);
      if (std::abs(x[0]) >= std::abs(x[1])) out.push_back(x);
    }
  return out;
}

Outcome end_to_end_circle() {
  struct Case {
    const char* name;
    SemialgebraicSystem sys;
    std::vector<std::int64_t> betti;
    std::vector<Vec> analytic;
  };
  const std::vector<Case> cases{
      {"F=X0^2-X1^2", st::four_points(), {4, 0},
       {st::unit({1, 1}), st::unit({1, -1}), st::unit({-1, 1}), st::unit({-1, -1})}},
      {"G=X0^2-X1^2", st::two_arcs(), {2, 0}, arc_samples(2000)}};
  bool ok = true;
  std::ostringstream os;
  for (const auto& c : cases) {
    RunConfig cfg;
    cfg.scale = 1.0;
    cfg.seed = 1006;
    const auto rep = run_homology(c.sys, cfg);
    CoveringParams cp;
    cp.grid.seed = cfg.seed;
    const auto w = covering(c.sys, cp);
    const auto dense = verify_nsw(c.sys, w, c.analytic);
    const bool green = rep.nsw_check.all_ok() && dense.all_ok() && rep.certificate == Certificate::rigorous;
    ok = ok && rep.betti == c.betti && green;
    os << c.name << ": betti (" << rep.betti[0] << "," << rep.betti[1] << "), " << rep.ball_count
       << " balls, nsw " << (green ? "green" : "NOT green") << ", certificate " << to_string(rep.certificate)
       << "; ";
  }
  return {ok, os.str()};
}

Outcome end_to_end_sphere() {
  RunConfig cfg;
  cfg.scale = 300.0;
  cfg.seed = 1007;
  const auto rep = run_homology(st::two_circles(), cfg);
  const std::vector<std::int64_t> expect{2, 2, 0};
  const bool ok = rep.betti == expect && rep.certificate == Certificate::relaxed &&
                  rep.cover_counters.cover_balls <= kMaxCoverBalls && rep.coverage.uncovered == 0;
  std::ostringstream os;
  os << "scale 300: betti (";
  for (std::size_t i = 0; i < rep.betti.size(); ++i) os << (i ? "," : "") << rep.betti[i];
  os << "), cover balls " << rep.cover_counters.cover_balls << " <= " << kMaxCoverBalls << ", kept "
     << rep.ball_count << ", certificate " << to_string(rep.certificate);
  return {ok, os.str()};
}

Outcome homology_suite() {
  auto b = [](const SimplicialComplex& c) { return betti_numbers(c).betti; };
  bool ok = b(SimplicialComplex::closure({{0, 1}, {1, 2}, {0, 2}})) == std::vector<std::int64_t>{1, 1} &&
            b(SimplicialComplex::closure({{0, 1, 2}})) == std::vector<std::int64_t>{1, 0, 0} &&
            b(SimplicialComplex::closure({{0, 2, 4}, {0, 2, 5}, {0, 3, 4}, {0, 3, 5}, {1, 2, 4}, {1, 2, 5},
                                          {1, 3, 4}, {1, 3, 5}})) == std::vector<std::int64_t>{1, 0, 1};
  const bool standard = ok;

  Rng rng(1008);
  std::size_t complexes = 0, identity_failures = 0;
  for (int t = 0; t < 100; ++t) {
    std::vector<Vec> centers;
    std::vector<double> radii;
    const int m = 10 + static_cast<int>(rng.below(30));
    for (int i = 0; i < m; ++i) {
      centers.push_back(rng.on_sphere(3));
      radii.push_back(rng.uniform(0.2, 0.6));
    }
    const auto c = build_nerve(centers, radii, 3);
    const auto r = betti_numbers(c);
    bool good = r.snf_consistent;
    for (int k = 2; k <= c.max_dim(); ++k)
      good = good && is_zero(multiply(boundary_matrix(c, k - 1), boundary_matrix(c, k)));
    std::int64_t chi = 0;
    for (int k = 0; k <= c.max_dim(); ++k)
      chi += (k % 2 ? -1 : 1) * r.betti[static_cast<std::size_t>(k)];
    good = good && chi == r.euler;
    ++complexes;
    if (!good) ++identity_failures;
  }

  std::size_t matrices = 0, snf_mismatch = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t rows = 1 + rng.below(30), cols = 1 + rng.below(30);
    const std::size_t rank = rng.below(std::min(rows, cols) + 1);
    std::vector<std::vector<std::int64_t>> a(rows, std::vector<std::int64_t>(rank)),
        bm(rank, std::vector<std::int64_t>(cols)), m(rows, std::vector<std::int64_t>(cols, 0));
    for (auto& row : a)
      for (auto& v : row) v = static_cast<std::int64_t>(rng.below(7)) - 3;
    for (auto& row : bm)
      for (auto& v : row) v = static_cast<std::int64_t>(rng.below(7)) - 3;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < rank; ++k)
        for (std::size_t j = 0; j < cols; ++j) m[i][j] += a[i][k] * bm[k][j];
    const auto s = SparseIntMatrix::from_dense(m);
    ++matrices;
    if (smith_normal_form(s).rank() != rational_rank(s)) ++snf_mismatch;
  }
  ok = ok && identity_failures == 0 && snf_mismatch == 0;
  return {ok, fmt("standard spaces %s; %zu nerve complexes, %zu identity failures; %zu matrices, %zu SNF/rank "
                  "mismatches",
                  standard ? "ok" : "WRONG", complexes, identity_failures, matrices, snf_mismatch)};
}

Outcome complexity_suite() {
  std::vector<double> scaled;
  std::ostringstream os;
  for (double c : {0.3, 0.15, 0.075}) {
    GridParams gp;
    gp.seed = 1009;
    const auto out = cover([c](const Vec&) { return c; }, 0.0, 1, gp);
    scaled.push_back(static_cast<double>(out.f_evaluations) * c);
    os << "c=" << c << ": work " << out.f_evaluations << ", work*c " << scaled.back() << "; ";
  }
  const double spread = *std::max_element(scaled.begin(), scaled.end()) /
                        *std::min_element(scaled.begin(), scaled.end());
  os << "spread " << spread << " <= " << kWorkSpread;
  return {spread <= kWorkSpread, os.str()};
}

double enclosing_radius(const Vec& a, const Vec& b, const Vec& c) {
  const double ab = (a - b).squaredNorm(), bc = (b - c).squaredNorm(), ca = (c - a).squaredNorm();
  const double longest = std::max({ab, bc, ca});
  if (2 * longest >= ab + bc + ca) return std::sqrt(longest) / 2;
  const double cross = std::abs((b - a)[0] * (c - a)[1] - (b - a)[1] * (c - a)[0]);
  return std::sqrt(ab * bc * ca) / (2 * cross);
}

Outcome nerve_suite() {
  Rng rng(1010);
  std::size_t pair_dis = 0, triple_dis = 0, positives = 0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<Vec> c(2, Vec(2));
    for (auto& x : c) x << rng.uniform(-1, 1), rng.uniform(-1, 1);
    std::vector<double> r{rng.uniform(0.05, 1), rng.uniform(0.05, 1)};
    const bool exact = (c[0] - c[1]).norm() <= r[0] + r[1] + kNerveTol * (1 + std::max(r[0], r[1]));
    if (balls_intersect_convex(c, r, kNerveTol) != exact) ++pair_dis;
  }
  for (int t = 0; t < 200; ++t) {
    std::vector<Vec> c(3, Vec(2));
    for (auto& x : c) x << rng.uniform(-1, 1), rng.uniform(-1, 1);
    const double r = rng.uniform(0.2, 1.2);
    const bool expect = enclosing_radius(c[0], c[1], c[2]) <= r;
    positives += expect;
    if (balls_intersect(c, std::vector<double>(3, r), kNerveTol) != expect) ++triple_dis;
  }
  return {pair_dis == 0 && triple_dis == 0,
          fmt("%zu/1000 pair and %zu/200 triple disagreements (%zu triples intersect)", pair_dis, triple_dis,
              positives)};
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds, 0 = none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "condition numbers", kLimit1, condition_suite},
      {2, "1/kappa is D-Lipschitz", kLimit2, lipschitz_suite},
      {3, "Weyl norm rotation invariance", 0, weyl_suite},
      {4, "adaptive vs nonadaptive minimization", kLimit4, minimize_suite},
      {5, "adaptive cover correctness", kLimit5, cover_suite},
      {6, "end to end on S^1 at scale 1", kLimit6, end_to_end_circle},
      {7, "end to end on S^2, relaxed", kLimit7, end_to_end_sphere},
      {8, "homology backend", kLimit8, homology_suite},
      {9, "cover work against 1/c", 0, complexity_suite},
      {10, "nerve feasibility solver", 0, nerve_suite},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = seconds_since(t0);
    const bool in_time = c.limit == 0 || secs < c.limit;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("criterion %2d %s  %s: %s [%.2f s%s]\n", c.id, pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                secs, c.limit == 0 ? "" : fmt(", limit %.0f s", c.limit).c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
