#pragma once

#include <string>

#include <json.hpp>

#include "heisenbrick/brick.hpp"
#include "heisenbrick/sumprod.hpp"

namespace hb {

using Json = nlohmann::json;

/// Sets serialize as sorted ascending integer arrays; inputs may instead use
/// the half-open interval form {"lo": a, "hi": b} = {a, ..., b-1} mod p.
Json set_to_json(const ResidueSet& s);
ResidueSet set_from_json(const FieldPtr& field, const Json& j);

/// {"p": .., "n": .., "X": [set, ..], "Y": [set, ..], "Z": set}
Json brick_to_json(const Brick& b);
Brick brick_from_json(const Json& j,
                      uint32_t max_modulus = PrimeField::kDefaultMaxModulus);

/// Brick fields plus "m".
Json sumprod_to_json(const SumProdInstance& inst);
SumProdInstance sumprod_from_json(const Json& j,
                                  uint32_t max_modulus = PrimeField::kDefaultMaxModulus);

/// {"x": [..], "y": [..], "z": int}
Json element_to_json(const HeisElement& e);
HeisElement element_from_json(const GroupParams& gp, const Json& j);

/// {"kx": "01..", "ky": "10..", "m": "1"} with '1' = full.
Json subgroup_to_json(const CoordinateSubgroup& g);
CoordinateSubgroup subgroup_from_json(const Json& j);

/// Parses with a line/column diagnostic on failure (throws input_error).
Json parse_json_text(const std::string& text, const std::string& origin);
Json parse_json_file(const std::string& path);

}  // namespace hb
