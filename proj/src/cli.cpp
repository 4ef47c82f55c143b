#include "measext/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>

#include <CLI11.hpp>

#include "measext/embeddings.hpp"
#include "measext/error.hpp"
#include "measext/filters.hpp"
#include "measext/json_io.hpp"
#include "measext/products.hpp"

namespace measext::cli {

namespace {

using io::json;
namespace fs = std::filesystem;

struct Inputs {
  std::string space, small, big, kit, family, left, right, extra, point, out, set;
};

struct Result {
  json body;
  int code = kOk;
};

std::string at(const std::string& file) { return file + "#"; }

json load(const std::string& file) { return io::read_json_file(file); }

MeasureSpace load_space(const std::string& file) { return io::space_from_json(load(file), at(file)); }

SigmaAlgebra load_algebra(const std::string& file) { return io::algebra_from_json(load(file), at(file)); }

SetFamily load_family(const std::string& file) {
  return io::family_from_json(load(file), at(file), fs::path(file).parent_path());
}

ProductSpace load_product(const std::string& file) { return io::product_from_json(load(file), at(file)); }

Subset parse_set(const GroundSet& ground, const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error&) {
    throw Error(Errc::invalid_input, "--set expects a JSON array of labels", "--set");
  }
  return io::subset_from_json(ground, j, "--set");
}

std::vector<std::string> split_labels(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      out.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty() || !out.empty()) out.push_back(current);
  return out;
}

Result verdict_result(const Verdict& v) { return {io::verdict_to_json(v), v.ok ? kOk : kFalse}; }

// ------------------------------------------------------------------ verbs

Result do_generate(const Inputs& in) {
  auto j = load(in.space);
  const auto where = at(in.space);
  if (!j.contains("points")) throw Error(Errc::invalid_input, "missing field \"points\"", where);
  std::vector<std::string> points;
  for (const auto& p : j.at("points")) {
    if (!p.is_string()) throw Error(Errc::invalid_input, "label must be a string", where + "/points");
    points.push_back(p.get<std::string>());
  }
  GroundSet ground(points);
  std::vector<Subset> generators;
  if (j.contains("generators")) {
    const auto& g = j.at("generators");
    for (std::size_t i = 0; i < g.size(); ++i) {
      generators.push_back(io::subset_from_json(ground, g[i], where + "/generators/" + std::to_string(i)));
    }
  }
  return {io::algebra_to_json(generate_sigma_algebra(ground, generators))};
}

Result do_atoms(const Inputs& in) {
  auto j = load(in.space);
  if (j.contains("values")) return {io::space_to_json(io::space_from_json(j, at(in.space)))};
  return {io::algebra_to_json(io::algebra_from_json(j, at(in.space)))};
}

Result do_value(const Inputs& in, ExtReal (*fn)(const MeasureSpace&, Subset)) {
  auto ms = load_space(in.space);
  auto s = parse_set(ms.ground(), in.set);
  try {
    return {{{"value", fn(ms, s).str()}}};
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), "--set");
  }
}

Result do_thick(const Inputs& in) {
  auto ms = load_space(in.space);
  auto x = parse_set(ms.ground(), in.set);
  const Subset rest = ms.ground().complement(x);
  json body = {{"thick", is_thick(ms, x)}, {"inner_measure_of_complement", inner_measure(ms, rest).str()}};
  if (body["thick"].get<bool>()) return {body};
  for (auto c : ms.algebra().members()) {
    if (c.subset_of(rest) && !measure_of(ms, c).is_zero()) {
      body["witness"] = io::subset_to_json(ms.ground(), c);
      break;
    }
  }
  return {body, kFalse};
}

Result do_ultrafilters(const Inputs& in) {
  auto algebra = load_algebra(in.space);
  json list = json::array();
  for (const auto& u : enumerate_ultrafilters(algebra)) list.push_back(io::record_to_json(u));
  return {{{"count", list.size()}, {"ultrafilters", std::move(list)}}};
}

Result do_classify_family(const Inputs& in) { return {io::record_to_json(classify_family(load_family(in.family)))}; }

Result do_extend_uf(const Inputs& in) { return {io::record_to_json(extend_to_ultrafilter(load_family(in.family)))}; }

Result do_uf_to_measure(const Inputs& in) {
  auto u = classify_family(load_family(in.family));
  return {io::space_to_json(measure_from_ultrafilter(u).space())};
}

Result do_measure_to_uf(const Inputs& in) {
  ZeroOneMeasure m(load_space(in.space));
  return {io::record_to_json(ultrafilter_from_01_measure(m))};
}

Result do_check_embed(const Inputs& in) { return verdict_result(check_measure_embedding(load_space(in.small), load_space(in.big))); }

Result do_decompose(const Inputs& in) {
  auto big = load_space(in.big);
  auto x = parse_set(big.ground(), in.set);
  return {io::decomposition_to_json(decompose_extension(big, x), big.ground())};
}

Result do_construct(const Inputs& in) {
  return {io::space_to_json(construct_extension(io::kit_from_json(load(in.kit), at(in.kit))))};
}

Result do_validate_kit(const Inputs& in) {
  auto violations = validate_kit(io::kit_from_json(load(in.kit), at(in.kit)));
  json list = json::array();
  for (const auto& v : violations) list.push_back({{"code", v.code}, {"detail", v.detail}});
  return {{{"ok", violations.empty()}, {"violations", std::move(list)}}, violations.empty() ? kOk : kFalse};
}

Result do_enumerate(const Inputs& in) {
  auto base = load_space(in.space);
  auto extra = split_labels(in.extra);
  json list = json::array();
  for (const auto& ms : enumerate_extensions(base, extra)) list.push_back(io::space_to_json(ms));
  return {{{"count", list.size()}, {"extensions", std::move(list)}}};
}

Result do_classify_points(const Inputs& in) {
  auto big = load_space(in.big);
  auto x = parse_set(big.ground(), in.set);
  return {{{"points", io::outside_points_to_json(classify_outside_points(big, x))}}};
}

Result do_product(const Inputs& in) { return {io::product_to_json(product_space(load_space(in.left), load_space(in.right)))}; }

Result do_section(const Inputs& in) {
  auto ps = load_product(in.space);
  auto s = parse_set(ps.product.ground(), in.set);
  return {{{"section", io::subset_to_json(ps.left.ground(), y_section(ps, s, in.point))}}};
}

Result do_lift_uf(const Inputs& in) {
  auto ps = load_product(in.space);
  auto f = classify_family(load_family(in.family));
  return {io::record_to_json(lift_ultrafilter(ps, f, in.point))};
}

Result do_project_uf(const Inputs& in) {
  auto ps = load_product(in.space);
  auto h = classify_family(load_family(in.family));
  auto [left, right] = project_ultrafilter(ps, h);
  return {{{"left", io::record_to_json(left)}, {"right", io::record_to_json(right)}}};
}

struct Verb {
  const char* name;
  const char* help;
  std::vector<std::string> options;  // all required
  std::function<Result(const Inputs&)> handler;
};

std::vector<Verb> verbs() {
  return {
      {"generate", "smallest sigma-algebra containing the generators", {"space"}, do_generate},
      {"atoms", "canonical atom form of a space", {"space"}, do_atoms},
      {"measure", "measure of a measurable set", {"space", "set"}, [](const Inputs& in) { return do_value(in, measure_of); }},
      {"inner", "inner measure of a set", {"space", "set"}, [](const Inputs& in) { return do_value(in, inner_measure); }},
      {"outer", "outer measure of a set", {"space", "set"}, [](const Inputs& in) { return do_value(in, outer_measure); }},
      {"thick", "whether a set is thick", {"space", "set"}, do_thick},
      {"ultrafilters", "all ultrafilters of an algebra", {"space"}, do_ultrafilters},
      {"classify-family", "filter/ultrafilter/c.i.p. flags of a family", {"family"}, do_classify_family},
      {"extend-uf", "extend a filter-base to an ultrafilter", {"family"}, do_extend_uf},
      {"uf-to-measure", "the {0,1}-valued measure of an ultrafilter", {"family"}, do_uf_to_measure},
      {"measure-to-uf", "the ultrafilter of a {0,1}-valued measure", {"space"}, do_measure_to_uf},
      {"check-embed", "whether the small space embeds in the big one", {"small", "big"}, do_check_embed},
      {"decompose", "canonical kit of an extension", {"big", "set"}, do_decompose},
      {"construct", "extension space generated by a kit", {"kit"}, do_construct},
      {"validate-kit", "list kit violations", {"kit"}, do_validate_kit},
      {"enumerate-extensions", "all extensions by extra points", {"space", "extra"}, do_enumerate},
      {"classify-points", "pasted / sticks_to / separated per outside point", {"big", "set"}, do_classify_points},
      {"product", "product of two measure spaces", {"left", "right"}, do_product},
      {"section", "y-section of a product set", {"space", "set", "point"}, do_section},
      {"lift-uf", "lift a left ultrafilter along {y}", {"space", "family", "point"}, do_lift_uf},
      {"project-uf", "project a product ultrafilter onto the factors", {"space", "family"}, do_project_uf},
  };
}

std::string* slot(Inputs& in, const std::string& name) {
  if (name == "space") return &in.space;
  if (name == "small") return &in.small;
  if (name == "big") return &in.big;
  if (name == "kit") return &in.kit;
  if (name == "family") return &in.family;
  if (name == "left") return &in.left;
  if (name == "right") return &in.right;
  if (name == "extra") return &in.extra;
  if (name == "point") return &in.point;
  if (name == "set") return &in.set;
  return nullptr;
}

json error_body(std::string_view code, const std::string& message, const std::string& path) {
  return {{"error", {{"code", code}, {"message", message}, {"path", path}}}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite measure spaces, their ultrafilters and extensions", "measext"};
  app.require_subcommand(1);
  Inputs in;
  const auto table = verbs();
  std::vector<std::pair<CLI::App*, const Verb*>> subs;
  for (const auto& verb : table) {
    auto* sub = app.add_subcommand(verb.name, verb.help);
    for (const auto& opt : verb.options) sub->add_option("--" + opt, *slot(in, opt))->required();
    sub->add_option("--out", in.out, "write the JSON here instead of standard output");
    subs.emplace_back(sub, &verb);
  }

  if (!args.empty() && !args.front().starts_with("-") &&
      std::none_of(table.begin(), table.end(), [&](const Verb& v) { return args.front() == v.name; })) {
    out << io::canonical_dump(error_body("usage", "unknown verb '" + args.front() + "'", ""));
    return kInputError;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    out << io::canonical_dump(error_body("usage", e.what(), ""));
    return kInputError;
  }

  const Verb* chosen = nullptr;
  for (auto& [sub, verb] : subs) {
    if (sub->parsed()) chosen = verb;
  }

  Result result;
  try {
    result = chosen->handler(in);
  } catch (const Error& e) {
    out << io::canonical_dump(error_body(to_string(e.code()), e.what(), e.path()));
    return kInputError;
  }

  const auto text = io::canonical_dump(result.body);
  if (!in.out.empty()) {
    std::ofstream file(in.out);
    if (!file) {
      out << io::canonical_dump(error_body("invalid_input", "cannot write output file", in.out));
      return kInputError;
    }
    file << text;
  } else {
    out << text;
  }
  return result.code;
}

}  // namespace measext::cli
