#pragma once

#include "conival/arrangement.hpp"
#include "conival/cone.hpp"
#include "conival/fan.hpp"
#include "conival/indicator.hpp"
#include "conival/intrinsic.hpp"

#include "json.hpp"

#include <string>

namespace conival::io {

// ordered_json keeps insertion order, so serialization is byte-stable
using json = nlohmann::ordered_json;

/*
 * JSON formats (rationals are strings "p/q", or "p" when q = 1):
 *   cone         {"ambient_dim": d, "rays": [[...]], "lineality": [[...]]}
 *             or {"ambient_dim": d, "equations": [[...]], "inequalities": [[...]]}
 *   arrangement  {"ambient_dim": d, "subspace_basis": [[...]]?, "normals": [[...]]}
 *   fan          {"ambient_dim": d, "cones": [<cone>...]}
 *   element      {"ambient_dim": d, "terms": [{"coeff": "c", "cone": <cone>}...]}
 *   report       {"theorem": ..., "instance": ..., "status": "pass"|"fail", "details": ...}
 */

json vec_to_json(const Vec& v);
Vec vec_from_json(const json& j, int expect_dim = -1);

json cone_to_json(const Cone& c);
Cone cone_from_json(const json& j);

json arrangement_to_json(const Arrangement& a);
Arrangement arrangement_from_json(const json& j);

json fan_to_json(const Fan& f);
Fan fan_from_json(const json& j);

json indicator_to_json(const IndicatorElement& f);
IndicatorElement indicator_from_json(const json& j);

/** Coefficients low degree first, plus the rendered polynomial. */
json char_poly_to_json(const CharPoly& p);

json report_to_json(const std::string& theorem, const std::string& instance, const CheckReport& r);

/** Estimate with z-sigma confidence radii; records samples and seed. */
json intrinsic_to_json(const IntrinsicEstimate& e, double z);

/** Parse a file (throws parse_error with the path on any failure). */
json load_json(const std::string& path);
Cone load_cone(const std::string& path);
Arrangement load_arrangement(const std::string& path);
Fan load_fan(const std::string& path);

/** One CSV line; numeric columns rendered with max_digits10 precision. */
std::string csv_row(const std::vector<std::string>& cells);

}  // namespace conival::io
