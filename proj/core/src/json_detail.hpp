// SPDX-FileCopyrightText: 2026 The semihom Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include "semihom/json_io.hpp"

namespace semihom::detail {

using json = nlohmann::json;

json number(double v);
json vec_json(const Vec& v);
json to_j(const HomogeneousPolynomial& p);
json to_j(const SemialgebraicSystem& s);
json to_j(const CoverOutput& c);
json to_j(const CoveringCounters& c);
json to_j(const WeightedBallSet& w);
json to_j(const SimplicialComplex& c);
json to_j(const HomologyReport& r);
json to_j(const NSWCheckReport& r);

json parse(std::string_view text);
std::string dump(const json& j);

}  // namespace semihom::detail
