#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "measext/embeddings.hpp"
#include "measext/filters.hpp"
#include "measext/products.hpp"
#include "measext/space.hpp"

namespace measext::io {

using nlohmann::json;

// Every reader takes `where`, a location prefix (file name and JSON pointer)
// used in the `path` of any Error it throws.

json subset_to_json(const GroundSet& ground, Subset s);
Subset subset_from_json(const GroundSet& ground, const json& j, const std::string& where);

/// {"points": [...], "atoms": [[...], ...]}
json algebra_to_json(const SigmaAlgebra& algebra);
SigmaAlgebra algebra_from_json(const json& j, const std::string& where);

/// {"points": [...], "atoms": [[...], ...], "values": ["1", "2/3", "inf"]}
json space_to_json(const MeasureSpace& ms);
MeasureSpace space_from_json(const json& j, const std::string& where);

/// A product serializes as its product space plus a "factors" object and a
/// "sigma_finite" report.
json product_to_json(const ProductSpace& ps);
ProductSpace product_from_json(const json& j, const std::string& where);

/// {"space": <space or path>, "members": [[...], ...]}. A string "space" is a
/// file path resolved against `base_dir`.
json family_to_json(const SetFamily& family);
SetFamily family_from_json(const json& j, const std::string& where, const std::filesystem::path& base_dir);

/// Family plus {"kernel": [...], "flags": {...}}.
json record_to_json(const UltrafilterRecord& r);

/// Key naming a subset inside "dfamily" and "fibers": its labels in
/// declared order joined by ','.
std::string subset_key(const GroundSet& ground, Subset s);

json kit_to_json(const ExtensionKit& kit);
ExtensionKit kit_from_json(const json& j, const std::string& where);

json decomposition_to_json(const DecompositionRecord& d, const GroundSet& big_ground);
json verdict_to_json(const Verdict& v);
json outside_points_to_json(const std::vector<OutsidePoint>& points);

json read_json_file(const std::filesystem::path& file);
/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const json& j);

}  // namespace measext::io
