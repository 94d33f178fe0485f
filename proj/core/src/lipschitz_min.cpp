// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#include "semihom/lipschitz_min.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

#include "semihom/error.hpp"

namespace semihom {

namespace {

// Grid coordinates are dyadic, so exact doubles work as keys.
class MemoizedFunction {
 public:
  explicit MemoizedFunction(const ScalarFunction& f) : f_(f) {}

  double operator()(double x) {
    auto [it, inserted] = cache_.try_emplace(x, 0.0);
    if (inserted) {
      it->second = f_(x);
      if (it->second < best_) {
        best_ = it->second;
        argmin_ = x;
      }
    }
    return it->second;
  }

  std::size_t evaluations() const { return cache_.size(); }
  double best() const { return best_; }
  double argmin() const { return argmin_; }

 private:
  const ScalarFunction& f_;
  std::map<double, double> cache_;
  double best_ = std::numeric_limits<double>::infinity();
  double argmin_ = 0.0;
};

constexpr std::size_t kMaxFrontier = std::size_t{1} << 22;

}  // namespace

MinimizeResult minimize_nonadaptive(const ScalarFunction& f, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("minimize_nonadaptive: eps must lie in (0, 1)");
  MemoizedFunction fm(f);
  int k = 0;
  for (;;) {
    const double r = std::ldexp(1.0, -k);
    const std::size_t points = (std::size_t{1} << k) + 1;
    bool refine = false;
    // Level k+1 contains every point of level k, so the scan can stop at
    // the first point that forces refinement.
    for (std::size_t i = 0; i < points && !refine; ++i)
      if (r >= eps * fm(static_cast<double>(i) * r)) refine = true;
    if (!refine) break;
    if (++k > 40)
      throw NonterminationError("minimize_nonadaptive: grid level exceeded 40 (f is not conforming)");
  }
  const double r = std::ldexp(1.0, -k);
  MinimizeResult res;
  res.min_estimate = fm.best();
  res.argmin = fm.argmin();
  res.levels = k;
  // Report the grid cell next to the minimizer whose other endpoint is lower.
  const double left = res.argmin - r;
  const double right = res.argmin + r;
  if (left < 0.0) {
    res.intervals.push_back({res.argmin, right});
  } else if (right > 1.0) {
    res.intervals.push_back({left, res.argmin});
  } else {
    res.intervals.push_back(fm(left) <= fm(right) ? Interval{left, res.argmin}
                                                   : Interval{res.argmin, right});
  }
  res.evaluations = fm.evaluations();
  return res;
}

MinimizeResult minimize_adaptive(const ScalarFunction& f, Interval interval, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InputError("minimize_adaptive: eps must lie in (0, 1]");
  if (!(interval.lo <= interval.hi)) throw InputError("minimize_adaptive: empty interval");
  MemoizedFunction fm(f);
  MinimizeResult res;
  std::vector<Interval> todo{interval};
  int depth = 0;
  while (!todo.empty()) {
    if (depth > 60)
      throw NonterminationError("minimize_adaptive: depth exceeded 60 (f is not conforming)");
    std::vector<Interval> next;
    for (const Interval& iv : todo) {
      const double m = std::min(fm(iv.lo), fm(iv.hi));
      if (m * eps >= iv.length()) {
        res.intervals.push_back(iv);
      } else {
        const double mid = 0.5 * (iv.lo + iv.hi);
        next.push_back({iv.lo, mid});
        next.push_back({mid, iv.hi});
      }
    }
    if (next.size() > kMaxFrontier)
      throw NonterminationError("minimize_adaptive: more than 2^22 open intervals (f is not conforming)");
    todo = std::move(next);
    if (!todo.empty()) ++depth;
  }
  std::sort(res.intervals.begin(), res.intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  res.min_estimate = fm.best();
  res.argmin = fm.argmin();
  res.evaluations = fm.evaluations();
  res.levels = depth;
  return res;
}

std::optional<ScalarFunction> builtin_scalar_function(std::string_view name) {
  if (name == "constant") return ScalarFunction([](double) { return 1.0; });
  if (name == "ramp") return ScalarFunction([](double x) { return 0.5 * x + 0.5; });
  if (name == "vee") return ScalarFunction([](double x) { return 0.5 + 0.5 * std::abs(x - 0.5); });
  if (name == "hinge") return ScalarFunction([](double x) { return std::max(x, 0.01); });
  return std::nullopt;
}

}  // namespace semihom
