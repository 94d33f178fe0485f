// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semihom/covering.hpp"
#include "semihom/homology.hpp"
#include "semihom/nerve.hpp"

namespace semihom {

struct RunConfig {
  std::string command = "homology";
  std::string system_path;
  double scale = 1.0;
  int max_dim = -1;  ///< -1 means n + 1
  std::size_t mc_samples = 10000;
  std::uint64_t seed = 0;
  std::size_t pool_size = 0;
  double tol = 1e-9;
  int threads = 1;
  std::string output_path;
  Coefficients coefficients = Coefficients::integer;
  bool thin = true;
  std::size_t max_grid_points = 20'000'000;

  /// Throws InputError on out-of-range fields.
  void validate() const;
};

enum class Certificate { rigorous, relaxed, failed };

const char* to_string(Certificate c);

/// Monte-Carlo check that random sphere points fall in some cover ball.
struct CoverageCheck {
  std::size_t samples = 0;
  std::size_t uncovered = 0;
  double worst_margin = 0.0;  ///< max over samples of min_B d_S(p, c_B) - r_B
};

struct PipelineReport {
  int n = 0;
  std::size_t q = 0;
  std::size_t s = 0;
  unsigned max_degree = 0;
  double scale = 1.0;
  int max_dim = 0;
  std::uint64_t seed = 0;
  double tol = 1e-9;

  std::vector<std::int64_t> betti;  ///< b_0 .. b_{max_dim - 1}
  std::map<int, std::vector<std::int64_t>> torsion;
  HomologyReport homology;          ///< full report for the truncated complex
  std::size_t ball_count = 0;
  CoveringCounters cover_counters;
  CoverageCheck coverage;
  std::size_t zero_samples = 0;
  NSWCheckReport nsw_check;
  std::vector<std::size_t> nerve_counts;
  Certificate certificate = Certificate::failed;
  std::string note;

  /// Constants of the run: radius denominator 360 (4D)^s D^{5/2}, eps
  /// denominator 40 D^{3/2}, filter factor sqrt(D), and the others below.
  std::map<std::string, double> constants;
};

SemialgebraicSystem parse_system(const std::string& path);

/// covering -> build_nerve -> betti_numbers.
PipelineReport run_homology(const SemialgebraicSystem& sys, const RunConfig& cfg);
/// Parses cfg.system_path first.
PipelineReport run_homology(const RunConfig& cfg);

std::string pipeline_to_json(const PipelineReport& r);

CoverageCheck check_cover_coverage(const CoverOutput& cover, std::size_t samples, std::uint64_t seed);

struct NamedSphereFunction {
  SphereFunction f;
  double lipschitz = 0.0;
};

/// "one" (f = 1), "band" (min(1, 0.05 + |x_0|)), "constant:<c>" with c in (0, 1].
std::optional<NamedSphereFunction> builtin_sphere_function(std::string_view name);

}  // namespace semihom
