#pragma once

#include <string>

#include <json.hpp>

#include "ramify/digit_poly.hpp"
#include "ramify/extension_enumerator.hpp"
#include "ramify/local_field.hpp"
#include "ramify/ram_polygon.hpp"
#include "ramify/residual_invariants.hpp"

namespace ramify {

using json = nlohmann::json;

/// {"p": 3, "unramified": [c_0..c_f], "eisenstein": [[digits of c_0], ...]}; the last two are optional.
LocalField field_from_json(const json& j);
json field_to_json(const LocalField& K);
LocalField load_field(const std::string& path);

json elem_to_json(const LocalField& K, ResidueElem a);
ResidueElem elem_from_json(const LocalField& K, const json& j);

/// {"n": 9, "points": [[1,10],[3,3],[9,0]]} with the p-power points only.
json polygon_to_json(const RamPolygon& R);
RamPolygon polygon_from_json(const LocalField& K, const json& j);
/// Parses "{(1,9),(2,6),(8,0)}"; horizontal points may be listed or omitted.
RamPolygon parse_polygon(const LocalField& K, long n, const std::string& text);

/// One array per segment of [position, coords] pairs.
json tuple_to_json(const LocalField& K, const ResidualTuple& A);
ResidualTuple tuple_from_json(const LocalField& K, const json& j);

/// {"n": n, "coeffs": [[[j, coords], ...] per coefficient]} listing nonzero digits only.
json poly_to_json(const LocalField& K, const DigitPoly& phi);
DigitPoly poly_from_json(const LocalField& K, const json& j);

json record_to_json(const LocalField& K, const ExtensionRecord& rec);
ExtensionRecord record_from_json(const LocalField& K, const json& j);

}  // namespace ramify
