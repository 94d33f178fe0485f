// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <fstream>
#include <sstream>

#include "json_detail.hpp"
#include "semihom/error.hpp"

namespace semihom {

namespace detail {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json vec_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v[i]));
  return a;
}

json to_j(const HomogeneousPolynomial& p) {
  json terms = json::array();
  for (const auto& [a, c] : p.terms()) terms.push_back({{"exponents", a.exponents}, {"coeff", c}});
  return {{"degree", p.degree()}, {"terms", terms}};
}

json to_j(const SemialgebraicSystem& s) {
  json f = json::array(), g = json::array();
  for (const auto& p : s.equalities()) f.push_back(to_j(p));
  for (std::size_t j = 0; j < s.s(); ++j)
    g.push_back({{"poly", to_j(s.inequalities()[j])}, {"strict", static_cast<bool>(s.strict()[j])}});
  return {{"n", s.n()}, {"F", f}, {"G", g}};
}

json to_j(const CoverOutput& c) {
  json balls = json::array();
  for (const auto& b : c.balls)
    balls.push_back({{"center", vec_json(b.center)}, {"radius", b.radius}, {"level", b.level}, {"index", b.index}});
  return {{"n", c.n},
          {"balls", balls},
          {"counters",
           {{"levels_used", c.levels_used},
            {"f_evaluations", c.f_evaluations},
            {"visited_per_level", c.visited_per_level},
            {"final_per_level", c.final_per_level},
            {"divide_calls", c.divide_calls},
            {"max_divide", c.max_divide},
            {"lipschitz_constant", number(c.lipschitz_constant)}}}};
}

json to_j(const CoveringCounters& c) {
  return {{"levels_used", c.levels_used},         {"f_evaluations", c.f_evaluations},
          {"visited_per_level", c.visited_per_level}, {"final_per_level", c.final_per_level},
          {"divide_calls", c.divide_calls},       {"max_divide", c.max_divide},
          {"cover_balls", c.cover_balls},         {"filter_passed", c.filter_passed},
          {"filter_rejected", c.filter_rejected}, {"thinned_away", c.thinned_away}};
}

json to_j(const WeightedBallSet& w) {
  json balls = json::array();
  for (const auto& b : w.balls)
    balls.push_back({{"center", vec_json(b.center)},
                     {"eps", number(b.eps)},
                     {"kappa", number(b.kappa)},
                     {"cover_radius", b.cover_radius},
                     {"level", b.level},
                     {"index", b.grid_index}});
  return {{"n", w.n},
          {"scale", w.scale},
          {"max_degree", w.max_degree},
          {"num_inequalities", w.num_inequalities},
          {"density_floor", w.density_floor},
          {"balls", balls},
          {"counters", to_j(w.counters)}};
}

json to_j(const SimplicialComplex& c) {
  json dims = json::object();
  for (int k = 0; k <= c.max_dim(); ++k) {
    json list = json::array();
    for (std::size_t i = 0; i < c.count(k); ++i) {
      const auto s = c.simplex(k, i);
      if (k == 0)
        list.push_back(s[0]);
      else
        list.push_back(std::vector<std::uint32_t>(s.begin(), s.end()));
    }
    dims[std::to_string(k)] = list;
  }
  return {{"max_dim", c.max_dim()}, {"dims", dims}};
}

json to_j(const HomologyReport& r) {
  json torsion = json::object();
  for (const auto& [k, f] : r.torsion) torsion[std::to_string(k)] = f;
  return {{"betti", r.betti},
          {"torsion", torsion},
          {"euler", r.euler},
          {"coefficients", to_string(r.coefficients)},
          {"simplex_counts", r.simplex_counts},
          {"boundary_ranks", r.boundary_ranks},
          {"snf_consistent", r.snf_consistent}};
}

json to_j(const NSWCheckReport& r) {
  auto head = [](const std::vector<std::size_t>& v) {
    return std::vector<std::size_t>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(v.size(), 16)));
  };
  return {{"c_bound_ok", r.c_bound_ok},
          {"approx_condition_ok", r.approx_condition_ok},
          {"density", to_string(r.density)},
          {"worst_margins",
           {{"c_bound", number(r.worst_c_margin)},
            {"approx_condition", number(r.worst_approx_margin)},
            {"density", number(r.worst_density_margin)}}},
          {"violations",
           {{"c_bound", r.c_violations.size()},
            {"approx_condition", r.approx_violations.size()},
            {"density", r.density_violations.size()},
            {"first_c_bound", head(r.c_violations)},
            {"first_approx_condition", head(r.approx_violations)},
            {"first_density_samples", head(r.density_violations)}}},
          {"samples", r.samples}};
}

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace detail

using detail::json;

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

template <class T>
T get(const json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw InputError(where + ": unexpected value " + j.dump());
  }
}

HomogeneousPolynomial poly_from(const json& j, std::size_t num_vars, const std::string& where) {
  const auto degree = get<int>(field(j, "degree", where), where + ".degree");
  if (degree < 0) throw InputError(where + ": negative degree");
  const json& terms = field(j, "terms", where);
  if (!terms.is_array()) throw InputError(where + ".terms: expected an array");
  std::vector<std::pair<MultiIndex, double>> parsed;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string tw = where + ".terms[" + std::to_string(t) + "]";
    const auto e = get<std::vector<int>>(field(terms[t], "exponents", tw), tw + ".exponents");
    std::vector<unsigned> exps;
    for (int v : e) {
      if (v < 0) throw InputError(tw + ": negative exponent");
      exps.push_back(static_cast<unsigned>(v));
    }
    parsed.emplace_back(MultiIndex(std::move(exps)), get<double>(field(terms[t], "coeff", tw), tw + ".coeff"));
  }
  try {
    return HomogeneousPolynomial(num_vars, static_cast<unsigned>(degree), parsed);
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
}

}  // namespace

std::string polynomial_to_json(const HomogeneousPolynomial& p) { return detail::dump(detail::to_j(p)); }

HomogeneousPolynomial polynomial_from_json(std::string_view text, std::size_t num_vars) {
  return poly_from(detail::parse(text), num_vars, "polynomial");
}

std::string system_to_json(const SemialgebraicSystem& sys) { return detail::dump(detail::to_j(sys)); }

SemialgebraicSystem system_from_json(std::string_view text) {
  const json j = detail::parse(text);
  const int n = get<int>(field(j, "n", "system"), "system.n");
  if (n < 1) throw InputError("system.n must be >= 1");
  const auto nv = static_cast<std::size_t>(n) + 1;
  PolyTuple f, g;
  std::vector<bool> strict;
  if (j.contains("F")) {
    const json& arr = j.at("F");
    if (!arr.is_array()) throw InputError("system.F: expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) f.push_back(poly_from(arr[i], nv, "F[" + std::to_string(i) + "]"));
  }
  if (j.contains("G")) {
    const json& arr = j.at("G");
    if (!arr.is_array()) throw InputError("system.G: expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string w = "G[" + std::to_string(i) + "]";
      if (arr[i].is_object() && arr[i].contains("poly")) {
        g.push_back(poly_from(arr[i].at("poly"), nv, w + ".poly"));
        strict.push_back(arr[i].contains("strict") ? get<bool>(arr[i].at("strict"), w + ".strict") : false);
      } else {
        g.push_back(poly_from(arr[i], nv, w));
        strict.push_back(false);
      }
    }
  }
  return SemialgebraicSystem(n, std::move(f), std::move(g), std::move(strict));
}

std::string cover_to_json(const CoverOutput& out) { return detail::dump(detail::to_j(out)); }

std::string weighted_set_to_json(const WeightedBallSet& w) { return detail::dump(detail::to_j(w)); }

WeightedBallSet weighted_set_from_json(std::string_view text) {
  const json j = detail::parse(text);
  const json& balls = field(j, "balls", "ball set");
  if (!balls.is_array()) throw InputError("ball set.balls: expected an array");
  WeightedBallSet w;
  if (j.contains("scale")) w.scale = get<double>(j.at("scale"), "ball set.scale");
  if (j.contains("max_degree")) w.max_degree = get<unsigned>(j.at("max_degree"), "ball set.max_degree");
  if (j.contains("num_inequalities"))
    w.num_inequalities = get<std::size_t>(j.at("num_inequalities"), "ball set.num_inequalities");
  if (j.contains("density_floor")) w.density_floor = get<double>(j.at("density_floor"), "ball set.density_floor");
  int dim = -1;
  for (std::size_t i = 0; i < balls.size(); ++i) {
    const std::string where = "balls[" + std::to_string(i) + "]";
    const auto c = get<std::vector<double>>(field(balls[i], "center", where), where + ".center");
    if (dim < 0) dim = static_cast<int>(c.size());
    if (static_cast<int>(c.size()) != dim || dim < 2) throw InputError(where + ": bad center dimension");
    WeightedBall b;
    b.center = Eigen::Map<const Vec>(c.data(), static_cast<Eigen::Index>(c.size()));
    b.eps = get<double>(field(balls[i], "eps", where), where + ".eps");
    if (!(b.eps > 0.0) || !std::isfinite(b.eps)) throw InputError(where + ": eps must be positive");
    if (balls[i].contains("kappa") && !balls[i].at("kappa").is_null())
      b.kappa = get<double>(balls[i].at("kappa"), where + ".kappa");
    if (balls[i].contains("cover_radius")) b.cover_radius = get<double>(balls[i].at("cover_radius"), where);
    if (balls[i].contains("level")) b.level = get<int>(balls[i].at("level"), where);
    if (balls[i].contains("index")) b.grid_index = get<std::size_t>(balls[i].at("index"), where);
    w.balls.push_back(std::move(b));
  }
  w.n = j.contains("n") ? get<int>(j.at("n"), "ball set.n") : std::max(dim - 1, 0);
  return w;
}

std::string complex_to_json(const SimplicialComplex& c) { return detail::dump(detail::to_j(c)); }

SimplicialComplex complex_from_json(std::string_view text) {
  const json j = detail::parse(text);
  const json& dims = field(j, "dims", "complex");
  if (!dims.is_object()) throw InputError("complex.dims: expected an object");
  int top = 0;
  for (const auto& [key, val] : dims.items()) {
    int k = 0;
    try {
      k = std::stoi(key);
    } catch (const std::exception&) {
      throw InputError("complex.dims: bad dimension key \"" + key + "\"");
    }
    if (k < 0) throw InputError("complex.dims: negative dimension");
    if (!val.empty()) top = std::max(top, k);
  }
  if (j.contains("max_dim")) top = std::max(top, get<int>(j.at("max_dim"), "complex.max_dim"));
  SimplicialComplex c(top);
  for (const auto& [key, val] : dims.items()) {
    const int k = std::stoi(key);
    for (const auto& s : val) {
      std::vector<std::uint32_t> v = s.is_array() ? get<std::vector<std::uint32_t>>(s, "complex.dims." + key)
                                                  : std::vector<std::uint32_t>{get<std::uint32_t>(s, "complex.dims." + key)};
      if (static_cast<int>(v.size()) != k + 1)
        throw InputError("complex.dims." + key + ": simplex with " + std::to_string(v.size()) + " vertices");
      c.add(Simplex(std::move(v)));
    }
  }
  c.normalize();
  if (!c.is_downward_closed()) throw InputError("complex: not closed under taking faces");
  return c;
}

std::string homology_to_json(const HomologyReport& r) { return detail::dump(detail::to_j(r)); }

std::string nsw_to_json(const NSWCheckReport& r) { return detail::dump(detail::to_j(r)); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

}  // namespace semihom
