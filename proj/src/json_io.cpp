#include "measext/json_io.hpp"

#include <fstream>
#include <sstream>

#include "measext/error.hpp"

namespace measext::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& message, Errc code = Errc::invalid_input) {
  throw Error(code, message, where);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::vector<std::string> labels_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of labels");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) fail(where + "/" + std::to_string(i), "label must be a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

// Rethrows construction errors from the core types with a location.
template <typename F>
auto located(const std::string& where, F&& make) {
  try {
    return make();
  } catch (const Error& e) {
    if (!e.path().empty()) throw;
    throw Error(e.code(), e.what(), where);
  }
}

ExtReal value_from_json(const json& j, const std::string& where) {
  if (j.is_string()) return located(where, [&] { return ExtReal::parse(j.get<std::string>()); });
  if (j.is_number_unsigned()) return ExtReal(static_cast<long long>(j.get<std::uint64_t>()));
  fail(where, "measure values are strings such as \"2/3\" or \"inf\"");
}

Subset subset_from_key(const GroundSet& ground, const std::string& key, const std::string& where) {
  std::vector<std::string> names;
  std::size_t start = 0;
  while (!key.empty()) {
    auto comma = key.find(',', start);
    names.push_back(key.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return located(where, [&] { return ground.subset_of(names); });
}

}  // namespace

json subset_to_json(const GroundSet& ground, Subset s) { return ground.labels_of(s); }

Subset subset_from_json(const GroundSet& ground, const json& j, const std::string& where) {
  auto names = labels_from_json(j, where);
  return located(where, [&] { return ground.subset_of(names); });
}

std::string subset_key(const GroundSet& ground, Subset s) {
  std::string key;
  for (const auto& l : ground.labels_of(s)) {
    if (!key.empty()) key += ",";
    key += l;
  }
  return key;
}

// ------------------------------------------------------------------ spaces

json algebra_to_json(const SigmaAlgebra& algebra) {
  json atoms = json::array();
  for (auto a : algebra.atoms()) atoms.push_back(subset_to_json(algebra.ground(), a));
  return {{"points", algebra.ground().labels()}, {"atoms", std::move(atoms)}};
}

SigmaAlgebra algebra_from_json(const json& j, const std::string& where) {
  auto points = labels_from_json(field(j, "points", where), where + "/points");
  GroundSet ground = located(where + "/points", [&] { return GroundSet(points); });
  const auto& atoms_json = field(j, "atoms", where);
  if (!atoms_json.is_array()) fail(where + "/atoms", "expected an array of atoms");
  std::vector<Subset> atoms;
  for (std::size_t i = 0; i < atoms_json.size(); ++i) {
    atoms.push_back(subset_from_json(ground, atoms_json[i], where + "/atoms/" + std::to_string(i)));
  }
  return located(where + "/atoms", [&] { return SigmaAlgebra(ground, atoms); });
}

json space_to_json(const MeasureSpace& ms) {
  json j = algebra_to_json(ms.algebra());
  json values = json::array();
  for (const auto& v : ms.atom_values()) values.push_back(v.str());
  j["values"] = std::move(values);
  return j;
}

MeasureSpace space_from_json(const json& j, const std::string& where) {
  // Values follow the atoms as written, before canonical sorting.
  auto points = labels_from_json(field(j, "points", where), where + "/points");
  GroundSet ground = located(where + "/points", [&] { return GroundSet(points); });
  const auto& atoms_json = field(j, "atoms", where);
  const auto& values_json = field(j, "values", where);
  if (!atoms_json.is_array() || !values_json.is_array() || atoms_json.size() != values_json.size()) {
    fail(where + "/values", "\"atoms\" and \"values\" must be arrays of equal length");
  }
  std::vector<std::pair<Subset, ExtReal>> pairs;
  for (std::size_t i = 0; i < atoms_json.size(); ++i) {
    pairs.emplace_back(subset_from_json(ground, atoms_json[i], where + "/atoms/" + std::to_string(i)),
                       value_from_json(values_json[i], where + "/values/" + std::to_string(i)));
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.first.lowest() < b.first.lowest(); });
  std::vector<Subset> atoms;
  std::vector<ExtReal> values;
  for (auto& [a, v] : pairs) {
    atoms.push_back(a);
    values.push_back(std::move(v));
  }
  return located(where + "/atoms", [&] { return MeasureSpace(SigmaAlgebra(ground, atoms), values); });
}

json product_to_json(const ProductSpace& ps) {
  json j = space_to_json(ps.product);
  j["factors"] = {{"left", space_to_json(ps.left)}, {"right", space_to_json(ps.right)}};
  j["sigma_finite"] = {{"left", is_sigma_finite(ps.left)}, {"right", is_sigma_finite(ps.right)}};
  return j;
}

ProductSpace product_from_json(const json& j, const std::string& where) {
  const auto& factors = field(j, "factors", where);
  auto left = space_from_json(field(factors, "left", where + "/factors"), where + "/factors/left");
  auto right = space_from_json(field(factors, "right", where + "/factors"), where + "/factors/right");
  auto ps = located(where, [&] { return product_space(left, right); });
  if (j.contains("atoms")) {
    auto stated = space_from_json(j, where);
    if (!(stated == ps.product)) fail(where, "product space does not match its factors");
  }
  return ps;
}

// ---------------------------------------------------------------- families

json family_to_json(const SetFamily& family) {
  json members = json::array();
  for (auto m : family.members()) members.push_back(subset_to_json(family.algebra().ground(), m));
  return {{"space", algebra_to_json(family.algebra())}, {"members", std::move(members)}};
}

json read_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(Errc::invalid_input, "cannot open file", file.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::invalid_input, std::string("malformed JSON: ") + e.what(), file.string());
  }
}

SetFamily family_from_json(const json& j, const std::string& where, const std::filesystem::path& base_dir) {
  const auto& space = field(j, "space", where);
  SigmaAlgebra algebra;
  if (space.is_string()) {
    auto file = base_dir / space.get<std::string>();
    algebra = algebra_from_json(read_json_file(file), file.string());
  } else {
    algebra = algebra_from_json(space, where + "/space");
  }
  const auto& members_json = field(j, "members", where);
  if (!members_json.is_array()) fail(where + "/members", "expected an array of sets");
  std::vector<Subset> members;
  for (std::size_t i = 0; i < members_json.size(); ++i) {
    members.push_back(subset_from_json(algebra.ground(), members_json[i], where + "/members/" + std::to_string(i)));
  }
  return located(where + "/members", [&] { return SetFamily(algebra, members); });
}

json record_to_json(const UltrafilterRecord& r) {
  json j = family_to_json(r.family);
  j["kernel"] = subset_to_json(r.algebra().ground(), r.kernel);
  j["flags"] = {{"is_filter_base", r.flags.is_filter_base},
                {"is_filter", r.flags.is_filter},
                {"is_ultrafilter", r.flags.is_ultrafilter},
                {"has_cip", r.flags.has_cip},
                {"is_free", r.flags.is_free}};
  return j;
}

// -------------------------------------------------------------------- kits

json kit_to_json(const ExtensionKit& kit) {
  const auto& xg = kit.base.ground();
  const auto& zg = kit.pasted.ground();
  json dfamily = json::object();
  for (const auto& [key, ds] : kit.dfamily) {
    json sets = json::array();
    for (auto d : ds) sets.push_back(subset_to_json(zg, d));
    dfamily[subset_key(xg, Subset(key))] = std::move(sets);
  }
  json fibers = json::object();
  for (const auto& [key, labels] : kit.fibers) fibers[subset_key(xg, Subset(key))] = labels;
  return {{"base", space_to_json(kit.base)},
          {"pasted", algebra_to_json(kit.pasted)},
          {"dfamily", std::move(dfamily)},
          {"fibers", std::move(fibers)}};
}

ExtensionKit kit_from_json(const json& j, const std::string& where) {
  ExtensionKit kit;
  kit.base = space_from_json(field(j, "base", where), where + "/base");
  if (j.contains("pasted")) kit.pasted = algebra_from_json(j.at("pasted"), where + "/pasted");
  const auto& xg = kit.base.ground();
  const auto& zg = kit.pasted.ground();

  const auto& dfamily = field(j, "dfamily", where);
  if (!dfamily.is_object()) fail(where + "/dfamily", "expected an object keyed by sets of base labels");
  for (const auto& [key, sets] : dfamily.items()) {
    const std::string at = where + "/dfamily/" + key;
    auto b = subset_from_key(xg, key, at);
    if (!sets.is_array()) fail(at, "expected an array of pasted sets");
    auto& ds = kit.dfamily[b.bits()];
    for (std::size_t i = 0; i < sets.size(); ++i) {
      ds.push_back(subset_from_json(zg, sets[i], at + "/" + std::to_string(i)));
    }
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  }

  if (j.contains("fibers")) {
    const auto& fibers = j.at("fibers");
    if (!fibers.is_object()) fail(where + "/fibers", "expected an object keyed by atoms of the base");
    for (const auto& [key, value] : fibers.items()) {
      const std::string at = where + "/fibers/" + key;
      auto k = subset_from_key(xg, key, at);
      if (value.is_number_unsigned()) {
        kit.fibers[k.bits()] = fresh_fiber_labels(xg, k, value.get<std::size_t>());
      } else {
        kit.fibers[k.bits()] = labels_from_json(value, at);
      }
    }
  }
  return kit;
}

json decomposition_to_json(const DecompositionRecord& d, const GroundSet& big_ground) {
  json j = kit_to_json(d.kit);
  j["z_part"] = subset_to_json(big_ground, d.z_part);
  j["form"] = d.form == KitForm::blowup ? "blowup" : "ultrafilter_only";
  json assignment = json::object();
  for (const auto& p : d.point_assignment) {
    if (p.pasted) {
      assignment[p.label] = {{"kind", "pasted"}};
    } else {
      assignment[p.label] = {{"kind", "fiber"}, {"kernel", subset_to_json(d.kit.base.ground(), p.kernel)}};
    }
  }
  j["point_assignment"] = std::move(assignment);
  return j;
}

json verdict_to_json(const Verdict& v) {
  json j = {{"ok", v.ok}};
  if (v.witness) {
    j["witness"] = *v.witness;
    j["witness_space"] = v.witness_space;
  }
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

json outside_points_to_json(const std::vector<OutsidePoint>& points) {
  json out = json::object();
  for (const auto& p : points) {
    switch (p.kind) {
      case OutsideKind::pasted: out[p.label] = {{"kind", "pasted"}}; break;
      case OutsideKind::sticks_to: out[p.label] = {{"kind", "sticks_to"}, {"partners", p.partners}}; break;
      case OutsideKind::separated: out[p.label] = {{"kind", "separated"}}; break;
    }
  }
  return out;
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace measext::io
