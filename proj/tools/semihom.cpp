// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

// semihom: command-line front end for the semihom library.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "semihom/condition.hpp"
#include "semihom/covering.hpp"
#include "semihom/error.hpp"
#include "semihom/json_io.hpp"
#include "semihom/lipschitz_min.hpp"
#include "semihom/nerve.hpp"
#include "semihom/pipeline.hpp"
#include "semihom/spheregrid.hpp"

namespace {

using json = nlohmann::json;
using namespace semihom;

constexpr int kExitInput = 2;
constexpr int kExitSingular = 3;
constexpr int kExitNontermination = 4;

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("--point: cannot parse \"" + item + "\"");
    }
  }
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

std::string interval_list(const std::vector<Interval>& v) {
  json a = json::array();
  for (const auto& i : v) a.push_back({i.lo, i.hi});
  return a.dump();
}

json minimize_json(const MinimizeResult& r) {
  return {{"min_estimate", r.min_estimate},
          {"argmin", r.argmin},
          {"evaluations", r.evaluations},
          {"levels", r.levels},
          {"intervals", json::parse(interval_list(r.intervals))}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homology of spherical semialgebraic sets by adaptive covering"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "Write the JSON report here instead of stdout");

  // kappa
  auto* kappa_cmd = app.add_subcommand("kappa", "Condition number kappa(F,G,x) at a point");
  std::string kappa_file, kappa_point;
  kappa_cmd->add_option("file", kappa_file, "System JSON")->required();
  kappa_cmd->add_option("--point", kappa_point, "Comma-separated unit vector x0,x1,...")->required();

  // minimize1d
  auto* min_cmd = app.add_subcommand("minimize1d", "Lipschitz minimization on [0, 1]");
  std::string min_fn;
  double min_eps = 0.05;
  std::string min_mode = "both";
  min_cmd->add_option("--fn", min_fn, "constant | ramp | vee | hinge")->required();
  min_cmd->add_option("--eps", min_eps, "Relative precision")->required();
  min_cmd->add_option("--mode", min_mode, "adaptive | nonadaptive | both")
      ->check(CLI::IsMember({"adaptive", "nonadaptive", "both"}));

  // cover
  auto* cover_cmd = app.add_subcommand("cover", "Adaptive ball cover of S^n");
  std::string cover_fn, cover_system;
  int cover_n = 1;
  double cover_scale = 1.0;
  GridParams cover_grid;
  auto* fn_opt = cover_cmd->add_option("--fn", cover_fn, "one | band | constant:<c>");
  auto* sys_opt = cover_cmd->add_option("--system", cover_system, "Use the radius function of this system");
  fn_opt->excludes(sys_opt);
  cover_cmd->add_option("--n", cover_n, "Sphere dimension for --fn")->check(CLI::PositiveNumber);
  cover_cmd->add_option("--scale", cover_scale, "Relaxation factor for --system");
  cover_cmd->add_option("--seed", cover_grid.seed, "Grid seed");
  cover_cmd->add_option("--pool-size", cover_grid.pool_size, "Minimum grid candidate pool");
  cover_cmd->add_option("--threads", cover_grid.threads, "Worker threads")->check(CLI::PositiveNumber);
  cover_cmd->add_option("--max-grid-points", cover_grid.max_grid_points, "Largest grid level to build");

  // covering
  auto* covering_cmd = app.add_subcommand("covering", "Weighted ball set of S(F,G)");
  std::string covering_file;
  CoveringParams covering_params;
  bool covering_no_thin = false;
  covering_cmd->add_option("file", covering_file, "System JSON")->required();
  covering_cmd->add_option("--scale", covering_params.scale, "Relaxation factor (1 = certified constants)");
  covering_cmd->add_option("--seed", covering_params.grid.seed, "Grid seed");
  covering_cmd->add_option("--pool-size", covering_params.grid.pool_size, "Minimum grid candidate pool");
  covering_cmd->add_option("--threads", covering_params.grid.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  covering_cmd->add_option("--max-grid-points", covering_params.grid.max_grid_points,
                           "Largest grid level to build");
  covering_cmd->add_flag("--no-thin", covering_no_thin, "Keep every ball that passes the filter");

  // nerve
  auto* nerve_cmd = app.add_subcommand("nerve", "Nerve complex of a weighted ball set");
  std::string nerve_file;
  int nerve_max_dim = -1;
  double nerve_tol = 1e-9;
  int nerve_threads = 1;
  nerve_cmd->add_option("balls", nerve_file, "Ball set JSON")->required();
  nerve_cmd->add_option("--max-dim", nerve_max_dim, "Dimension cap (default n+1)");
  nerve_cmd->add_option("--tol", nerve_tol, "Intersection tolerance");
  nerve_cmd->add_option("--threads", nerve_threads, "Worker threads")->check(CLI::PositiveNumber);

  // homology
  auto* hom_cmd = app.add_subcommand("homology", "Full pipeline: covering, nerve, Betti numbers");
  RunConfig cfg;
  std::string coeff = "integer";
  bool hom_no_thin = false;
  hom_cmd->add_option("file", cfg.system_path, "System JSON")->required();
  hom_cmd->add_option("--scale", cfg.scale, "Relaxation factor (1 = certified constants)");
  hom_cmd->add_option("--max-dim", cfg.max_dim, "Nerve dimension cap (default n+1)");
  hom_cmd->add_option("--seed", cfg.seed, "Seed for grids and Monte-Carlo checks");
  hom_cmd->add_option("--mc-samples", cfg.mc_samples, "Monte-Carlo cover coverage samples");
  hom_cmd->add_option("--tol", cfg.tol, "Nerve intersection tolerance");
  hom_cmd->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  hom_cmd->add_option("--pool-size", cfg.pool_size, "Minimum grid candidate pool");
  hom_cmd->add_option("--coefficients", coeff, "integer | rational | mod2")
      ->check(CLI::IsMember({"integer", "rational", "mod2"}));
  hom_cmd->add_option("--max-grid-points", cfg.max_grid_points, "Largest grid level to build");
  hom_cmd->add_flag("--no-thin", hom_no_thin, "Keep every ball that passes the filter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*kappa_cmd) {
      const SemialgebraicSystem sys = parse_system(kappa_file);
      const auto p = parse_point(kappa_point);
      if (p.size() != static_cast<std::size_t>(sys.n()) + 1)
        throw InputError("--point must have n+1 = " + std::to_string(sys.n() + 1) + " coordinates");
      const Vec x = Eigen::Map<const Vec>(p.data(), static_cast<Eigen::Index>(p.size()));
      require_unit(x, "--point");
      const ConditionValue k = kappa_semi(sys, x);
      json j = {{"point", p},
                {"kappa", finite_or_null(k.value())},
                {"finite", k.is_finite()},
                {"normalized_residual", normalized_residual(sys, x)}};
      if (sys.q() > 0) {
        j["kappa_F"] = finite_or_null(kappa(sys.equalities(), x).value());
        j["mu_proj_F"] = finite_or_null(mu_proj(sys.equalities(), x).value());
      }
      emit(j.dump(2) + "\n", out_path);
    } else if (*min_cmd) {
      const auto f = builtin_scalar_function(min_fn);
      if (!f) throw InputError("unknown function \"" + min_fn + "\"");
      json j = {{"fn", min_fn}, {"eps", min_eps}};
      if (min_mode != "nonadaptive") j["adaptive"] = minimize_json(minimize_adaptive(*f, Interval{0.0, 1.0}, min_eps));
      if (min_mode != "adaptive") j["nonadaptive"] = minimize_json(minimize_nonadaptive(*f, min_eps));
      emit(j.dump(2) + "\n", out_path);
    } else if (*cover_cmd) {
      if (cover_fn.empty() == cover_system.empty()) throw InputError("cover: give exactly one of --fn, --system");
      if (!cover_fn.empty()) {
        const auto f = builtin_sphere_function(cover_fn);
        if (!f) throw InputError("unknown sphere function \"" + cover_fn + "\"");
        emit(cover_to_json(cover(f->f, f->lipschitz, cover_n, cover_grid)), out_path);
      } else {
        const SemialgebraicSystem sys = parse_system(cover_system);
        const RadiusFunction f(sys, cover_scale);
        emit(cover_to_json(cover(std::cref(f), f.lipschitz_constant(), sys.n(), cover_grid)), out_path);
      }
    } else if (*covering_cmd) {
      const SemialgebraicSystem sys = parse_system(covering_file);
      covering_params.thin = !covering_no_thin;
      emit(weighted_set_to_json(covering(sys, covering_params)), out_path);
    } else if (*nerve_cmd) {
      const WeightedBallSet w = weighted_set_from_json(read_text_file(nerve_file));
      const int max_dim = nerve_max_dim < 0 ? w.n + 1 : nerve_max_dim;
      emit(complex_to_json(build_nerve(w, max_dim, nerve_tol, nerve_threads)), out_path);
    } else if (*hom_cmd) {
      cfg.thin = !hom_no_thin;
      cfg.coefficients = coeff == "mod2"       ? Coefficients::mod2
                         : coeff == "rational" ? Coefficients::rational
                                               : Coefficients::integer;
      emit(pipeline_to_json(run_homology(cfg)), out_path);
    }
  } catch (const SingularityError& e) {
    std::cerr << "semihom: singular point: " << e.what() << "\n  x = (";
    for (std::size_t i = 0; i < e.point().size(); ++i) std::cerr << (i ? ", " : "") << e.point()[i];
    std::cerr << ")\n  kappa = " << e.kappa() << "\n";
    return kExitSingular;
  } catch (const NonterminationError& e) {
    std::cerr << "semihom: " << e.what() << "\n";
    return kExitNontermination;
  } catch (const InputError& e) {
    std::cerr << "semihom: " << e.what() << "\n";
    return kExitInput;
  } catch (const ConfigError& e) {
    std::cerr << "semihom: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
