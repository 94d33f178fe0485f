// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#include "semihom/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json_detail.hpp"
#include "semihom/error.hpp"
#include "semihom/random.hpp"

namespace semihom {

void RunConfig::validate() const {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw InputError("scale must be > 0");
  if (mc_samples < 1) throw InputError("mc_samples must be >= 1");
  if (!(tol >= 0.0) || !std::isfinite(tol)) throw InputError("tol must be >= 0");
  if (threads < 1) throw InputError("threads must be >= 1");
  if (max_dim != -1 && max_dim < 1) throw InputError("max_dim must be >= 1");
}

const char* to_string(Certificate c) {
  switch (c) {
    case Certificate::rigorous:
      return "rigorous";
    case Certificate::relaxed:
      return "relaxed";
    case Certificate::failed:
      return "failed";
  }
  return "unknown";
}

SemialgebraicSystem parse_system(const std::string& path) { return system_from_json(read_text_file(path)); }

CoverageCheck check_cover_coverage(const CoverOutput& cover, std::size_t samples, std::uint64_t seed) {
  CoverageCheck out;
  out.samples = samples;
  out.worst_margin = -std::numeric_limits<double>::infinity();
  if (cover.balls.empty()) {
    out.uncovered = samples;
    out.worst_margin = std::numeric_limits<double>::infinity();
    return out;
  }
  double rmax = 0.0;
  for (const auto& b : cover.balls) rmax = std::max(rmax, b.radius);
  const double reach = chord_for_geodesic(rmax);
  PointIndex index(cover.n + 1, reach);
  for (const auto& b : cover.balls) index.insert(b.center);
  Rng rng = Rng(seed).split("coverage");
  for (std::size_t i = 0; i < samples; ++i) {
    const Vec p = rng.on_sphere(cover.n + 1);
    double best = std::numeric_limits<double>::infinity();
    index.for_each_within(p, reach, [&](std::uint32_t id, double) {
      const auto& b = cover.balls[id];
      best = std::min(best, geodesic_distance(p, b.center) - b.radius);
    });
    if (!(best <= 1e-9)) ++out.uncovered;
    out.worst_margin = std::max(out.worst_margin, best);
  }
  return out;
}

PipelineReport run_homology(const SemialgebraicSystem& sys, const RunConfig& cfg) {
  cfg.validate();
  PipelineReport rep;
  rep.n = sys.n();
  rep.q = sys.q();
  rep.s = sys.s();
  rep.max_degree = sys.max_degree();
  rep.scale = cfg.scale;
  rep.seed = cfg.seed;
  rep.tol = cfg.tol;
  rep.max_dim = cfg.max_dim < 0 ? sys.n() + 1 : cfg.max_dim;

  const double d = sys.max_degree();
  const double pow4d = std::pow(4.0 * d, static_cast<double>(sys.s()));
  rep.constants = {
      {"radius_denominator", 360.0 * pow4d * std::pow(d, 2.5)},
      {"eps_denominator", 40.0 * std::pow(d, 1.5)},
      {"filter_factor", std::sqrt(d)},
      {"approx_bound_denominator", 13.0 * pow4d * std::pow(d, 1.5)},
      {"lipschitz_constant", cfg.scale / (180.0 * pow4d * std::pow(d, 1.5))},
  };

  CoveringParams cp;
  cp.scale = cfg.scale;
  cp.thin = cfg.thin;
  cp.grid.pool_size = cfg.pool_size;
  cp.grid.seed = cfg.seed;
  cp.grid.threads = cfg.threads;
  cp.grid.max_grid_points = cfg.max_grid_points;
  CoverOutput raw;
  const WeightedBallSet w = covering(sys, cp, &raw);
  rep.constants["density_floor"] = w.density_floor;
  rep.ball_count = w.balls.size();
  rep.cover_counters = w.counters;
  rep.coverage = check_cover_coverage(raw, cfg.mc_samples, cfg.seed);

  const std::vector<Vec> samples = zero_samples(sys, w);
  rep.zero_samples = samples.size();
  rep.nsw_check = verify_nsw(sys, w, samples);

  const SimplicialComplex nerve = build_nerve(w, rep.max_dim, cfg.tol, cfg.threads);
  for (int k = 0; k <= rep.max_dim; ++k) rep.nerve_counts.push_back(nerve.count(k));
  HomologyOptions ho;
  ho.coefficients = cfg.coefficients;
  rep.homology = betti_numbers(nerve, ho);
  rep.betti.assign(rep.homology.betti.begin(), rep.homology.betti.begin() + rep.max_dim);
  for (const auto& [k, f] : rep.homology.torsion)
    if (k < rep.max_dim) rep.torsion[k] = f;
  if (w.empty()) rep.note = "S(F,G) empty (numerically)";

  if (cfg.scale != 1.0)
    rep.certificate = Certificate::relaxed;
  else if (rep.nsw_check.all_ok() && rep.coverage.uncovered == 0)
    rep.certificate = Certificate::rigorous;
  else
    rep.certificate = Certificate::failed;
  return rep;
}

PipelineReport run_homology(const RunConfig& cfg) {
  cfg.validate();
  return run_homology(parse_system(cfg.system_path), cfg);
}

std::string pipeline_to_json(const PipelineReport& r) {
  using detail::json;
  using detail::number;
  json torsion = json::object();
  for (const auto& [k, f] : r.torsion) torsion[std::to_string(k)] = f;
  json constants = json::object();
  for (const auto& [k, v] : r.constants) constants[k] = number(v);
  json j = {
      {"system", {{"n", r.n}, {"q", r.q}, {"s", r.s}, {"max_degree", r.max_degree}}},
      {"config", {{"scale", r.scale}, {"max_dim", r.max_dim}, {"seed", r.seed}, {"tol", r.tol}}},
      {"betti", r.betti},
      {"torsion", torsion},
      {"euler", r.homology.euler},
      {"homology", detail::to_j(r.homology)},
      {"ball_count", r.ball_count},
      {"cover_counters", detail::to_j(r.cover_counters)},
      {"cover_coverage",
       {{"samples", r.coverage.samples},
        {"uncovered", r.coverage.uncovered},
        {"worst_margin", number(r.coverage.worst_margin)}}},
      {"zero_samples", r.zero_samples},
      {"nsw_check", detail::to_j(r.nsw_check)},
      {"nerve_counts", r.nerve_counts},
      {"certificate", to_string(r.certificate)},
      {"constants", constants},
  };
  if (!r.note.empty()) j["note"] = r.note;
  return detail::dump(j);
}

std::optional<NamedSphereFunction> builtin_sphere_function(std::string_view name) {
  if (name == "one") return NamedSphereFunction{[](const Vec&) { return 1.0; }, 0.0};
  if (name == "band")
    return NamedSphereFunction{[](const Vec& x) { return std::min(1.0, 0.05 + std::abs(x[0])); }, 1.0};
  constexpr std::string_view prefix = "constant:";
  if (name.substr(0, prefix.size()) == prefix) {
    const std::string value(name.substr(prefix.size()));
    double c = 0.0;
    try {
      std::size_t used = 0;
      c = std::stod(value, &used);
      if (used != value.size()) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (!(c > 0.0 && c <= 1.0)) return std::nullopt;
    return NamedSphereFunction{[c](const Vec&) { return c; }, 0.0};
  }
  return std::nullopt;
}

}  // namespace semihom
