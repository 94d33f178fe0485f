// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "semihom/covering.hpp"
#include "semihom/homology.hpp"
#include "semihom/nerve.hpp"
#include "semihom/spheregrid.hpp"

// Text-level JSON conversions. All writers are deterministic: keys are
// sorted and doubles are printed in shortest round-trip form. Non-finite
// numbers are written as null. Readers throw InputError on malformed input.
namespace semihom {

/// {"degree": d, "terms": [{"exponents": [...], "coeff": c}, ...]}
std::string polynomial_to_json(const HomogeneousPolynomial& p);
HomogeneousPolynomial polynomial_from_json(std::string_view text, std::size_t num_vars);

/// {"n": n, "F": [poly...], "G": [{"poly": poly, "strict": bool}...]}
std::string system_to_json(const SemialgebraicSystem& sys);
SemialgebraicSystem system_from_json(std::string_view text);

/// {"n", "balls": [{"center", "radius", "level", "index"}], "counters": {...}}
std::string cover_to_json(const CoverOutput& out);

/// {"n", "scale", "max_degree", "num_inequalities", "density_floor",
///  "balls": [{"center", "eps", "kappa", "cover_radius", "level", "index"}],
///  "counters": {...}}
std::string weighted_set_to_json(const WeightedBallSet& w);
/// Needs "balls" with "center" and "eps"; the remaining fields are optional.
WeightedBallSet weighted_set_from_json(std::string_view text);

/// {"max_dim": m, "dims": {"0": [v...], "1": [[i, j]...], ...}}
std::string complex_to_json(const SimplicialComplex& c);
SimplicialComplex complex_from_json(std::string_view text);

/// {"betti": [...], "torsion": {"k": [...]}, "euler": e, ...}
std::string homology_to_json(const HomologyReport& r);

std::string nsw_to_json(const NSWCheckReport& r);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace semihom
