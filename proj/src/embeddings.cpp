#include "measext/embeddings.hpp"

#include <algorithm>
#include <set>

#include "measext/error.hpp"

namespace measext {

namespace {

Subset embed_ground(const GroundSet& small, const GroundSet& big) {
  for (const auto& l : small.labels()) {
    if (!big.index_of(l)) {
      throw Error(Errc::ground_mismatch, "point '" + l + "' of the small space is not in the big space");
    }
  }
  return transfer(small.full(), small, big);
}

std::string join(const std::vector<std::string>& labels, std::string_view sep) {
  std::string out;
  for (const auto& l : labels) {
    if (!out.empty()) out += sep;
    out += l;
  }
  return out;
}

std::string describe(const GroundSet& g, Subset s) { return "{" + join(g.labels_of(s), ",") + "}"; }

void sort_unique(std::vector<Subset>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

// ------------------------------------------------------------------ checks

Verdict check_measurable_embedding(const SigmaAlgebra& small, const SigmaAlgebra& big) {
  const Subset x = embed_ground(small.ground(), big.ground());
  for (auto a : big.atoms()) {
    auto t = a & x;
    if (t.empty()) continue;
    if (!small.contains(transfer(t, big.ground(), small.ground()))) {
      return {false, big.ground().labels_of(a), "big",
              "trace of " + describe(big.ground(), a) + " on X is not measurable in the small algebra"};
    }
  }
  // Every trace atom is now a union of small atoms; a small atom that is not
  // itself a trace atom is not a trace at all.
  auto trace = trace_algebra(big, x);
  for (auto b : small.atoms()) {
    if (!trace.contains(transfer(b, small.ground(), trace.ground()))) {
      return {false, small.ground().labels_of(b), "small",
              describe(small.ground(), b) + " is not the trace of any measurable set of the big algebra"};
    }
  }
  return {true, std::nullopt, {}, {}};
}

Verdict check_measure_embedding(const MeasureSpace& small, const MeasureSpace& big) {
  auto structural = check_measurable_embedding(small.algebra(), big.algebra());
  if (!structural) return structural;
  const Subset x = embed_ground(small.ground(), big.ground());
  for (auto c : big.algebra().members()) {
    auto lambda = measure_of(big, c);
    auto mu = measure_of(small, transfer(c & x, big.ground(), small.ground()));
    if (lambda != mu) {
      return {false, big.ground().labels_of(c), "big",
              "lambda" + describe(big.ground(), c) + " = " + lambda.str() + " but mu of its trace is " +
                  mu.str()};
    }
  }
  return {true, std::nullopt, {}, {}};
}

bool thick_with_induced_measure(const MeasureSpace& small, const MeasureSpace& big) {
  if (!check_measurable_embedding(small.algebra(), big.algebra())) {
    throw Error(Errc::precondition, "thickness check requires a measurable embedding");
  }
  const Subset x = embed_ground(small.ground(), big.ground());
  if (!is_thick(big, x)) return false;
  for (auto b : small.algebra().members()) {
    if (measure_of(small, b) != outer_measure(big, transfer(b, small.ground(), big.ground()))) return false;
  }
  return true;
}

bool check_thickness_equivalence(const MeasureSpace& small, const MeasureSpace& big) {
  bool rhs = thick_with_induced_measure(small, big);
  return static_cast<bool>(check_measure_embedding(small, big)) == rhs;
}

MeasureSpace induced_subspace(const MeasureSpace& big, Subset x) {
  auto trace = trace_algebra(big.algebra(), x);
  const auto& atoms = big.algebra().atoms();
  std::vector<ExtReal> values(trace.atom_count());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    auto t = atoms[i] & x;
    if (t.empty()) {
      if (!big.atom_values()[i].is_zero()) {
        throw Error(Errc::precondition, "X is not thick: " + describe(big.ground(), atoms[i]) +
                                            " misses X but has measure " + big.atom_values()[i].str());
      }
      continue;
    }
    auto local = transfer(t, big.ground(), trace.ground());
    const auto& ta = trace.atoms();
    auto pos = std::find(ta.begin(), ta.end(), local) - ta.begin();
    values[static_cast<std::size_t>(pos)] = big.atom_values()[i];
  }
  return MeasureSpace(std::move(trace), std::move(values));
}

// -------------------------------------------------------------------- kits

std::string pasted_label(std::string_view name) { return "z:" + std::string(name); }

std::vector<std::string> fresh_fiber_labels(const GroundSet& base, Subset kernel, std::size_t count) {
  const auto stem = join(base.labels_of(kernel), "+");
  std::vector<std::string> out;
  for (std::size_t k = 1; k <= count; ++k) out.push_back(stem + "#" + std::to_string(k));
  return out;
}

ExtensionKit identity_kit(const MeasureSpace& base) {
  ExtensionKit kit{base, SigmaAlgebra{}, {}, {}};
  for (auto b : base.algebra().members()) kit.dfamily[b.bits()] = {Subset{}};
  return kit;
}

std::vector<KitViolation> validate_kit(const ExtensionKit& kit) {
  std::vector<KitViolation> out;
  const auto& base = kit.base.algebra();
  const auto& xg = base.ground();
  const auto& zg = kit.pasted.ground();

  // Labels of X, Z and every fiber are pairwise disjoint.
  std::set<std::string> seen(xg.labels().begin(), xg.labels().end());
  std::size_t total = xg.size();
  for (const auto& l : zg.labels()) {
    ++total;
    if (!seen.insert(l).second) out.push_back({"label_collision", "pasted point '" + l + "' reuses a label"});
  }
  for (const auto& [key, labels] : kit.fibers) {
    const Subset k(key);
    bool key_ok = k.subset_of(xg.full()) &&
                  std::find(base.atoms().begin(), base.atoms().end(), k) != base.atoms().end();
    if (!key_ok) {
      out.push_back({"fiber_key_not_atom", "fiber key mask " + std::to_string(key) + " is not an atom of the base"});
    }
    if (labels.empty()) out.push_back({"empty_fiber", "fiber at mask " + std::to_string(key) + " is empty"});
    for (const auto& l : labels) {
      ++total;
      if (l.empty() || l.find(',') != std::string::npos) {
        out.push_back({"bad_label", "fiber label '" + l + "' is empty or contains ','"});
      }
      if (!seen.insert(l).second) out.push_back({"label_collision", "fiber point '" + l + "' reuses a label"});
    }
  }
  if (total > kMaxPoints) {
    out.push_back({"size_cap", "extension would have " + std::to_string(total) + " points"});
  }

  // D_B: keyed by measurable B, nonempty, inside D.
  for (const auto& [key, ds] : kit.dfamily) {
    const Subset b(key);
    if (!b.subset_of(xg.full()) || !base.contains(b)) {
      out.push_back({"dfamily_key_not_measurable", "D_B key mask " + std::to_string(key) + " is not measurable in the base"});
    }
    for (auto d : ds) {
      if (!d.subset_of(zg.full()) || !kit.pasted.contains(d)) {
        out.push_back({"d_not_in_pasted", "a member of D_" + std::to_string(key) + " is not in D"});
      }
    }
  }
  const auto measurable = base.members();
  bool complete = true;
  for (auto b : measurable) {
    auto it = kit.dfamily.find(b.bits());
    if (it == kit.dfamily.end() || it->second.empty()) {
      out.push_back({"dfamily_empty", "D_B is missing or empty for B = " + describe(xg, b)});
      complete = false;
    }
  }
  if (!complete || !out.empty()) return out;

  auto has = [&](Subset b, Subset d) {
    const auto& ds = kit.dfamily.at(b.bits());
    return std::find(ds.begin(), ds.end(), d) != ds.end();
  };

  // The empty set is in D_empty.
  if (!has(Subset{}, Subset{})) out.push_back({"empty_not_in_d_empty", "the empty set is not in D_empty"});

  // Complements: Z \ D in D_{X \ B}.
  for (auto b : measurable) {
    for (auto d : kit.dfamily.at(b.bits())) {
      if (!has(xg.complement(b), zg.complement(d))) {
        out.push_back({"complement_missing", "Z \\ " + describe(zg, d) + " is not in D_{X \\ " + describe(xg, b) + "}"});
      }
    }
  }

  // Unions of selections, checked pairwise.
  for (auto b1 : measurable) {
    for (auto b2 : measurable) {
      for (auto d1 : kit.dfamily.at(b1.bits())) {
        for (auto d2 : kit.dfamily.at(b2.bits())) {
          if (!has(b1 | b2, d1 | d2)) {
            out.push_back({"union_missing", describe(zg, d1 | d2) + " is not in D_" + describe(xg, b1 | b2)});
          }
        }
      }
    }
  }
  return out;
}

namespace {

struct Layout {
  GroundSet ground;
  std::vector<Subset> fiber_sets;  // parallel to kit.fibers iteration order
  std::vector<Subset> fiber_keys;
  Subset x;
  std::size_t z_offset = 0;
};

Layout lay_out(const ExtensionKit& kit) {
  const auto& base = kit.base.algebra();
  std::vector<std::string> labels = base.ground().labels();
  Layout lay;
  for (auto atom : base.atoms()) {
    auto it = kit.fibers.find(atom.bits());
    if (it == kit.fibers.end()) continue;
    Subset fiber;
    for (const auto& l : it->second) {
      fiber |= Subset::singleton(labels.size());
      labels.push_back(l);
    }
    lay.fiber_keys.push_back(atom);
    lay.fiber_sets.push_back(fiber);
  }
  lay.z_offset = labels.size();
  for (const auto& l : kit.pasted.ground().labels()) labels.push_back(l);
  lay.x = Subset(base.ground().full());
  lay.ground = GroundSet(std::move(labels));
  return lay;
}

// Turns the generated family into atoms, checks it is a sigma-algebra and
// attaches lambda(C) = mu(C & X).
MeasureSpace finish(const ExtensionKit& kit, const Layout& lay, std::vector<Subset> family) {
  sort_unique(family);
  std::vector<Subset> atoms;
  Subset covered;
  for (std::size_t p = 0; p < lay.ground.size(); ++p) {
    if (covered.contains(p)) continue;
    Subset atom = lay.ground.full();
    for (auto c : family) {
      if (c.contains(p)) atom &= c;
    }
    atoms.push_back(atom);
    covered |= atom;
  }
  SigmaAlgebra algebra(lay.ground, std::move(atoms));
  ensure(family.size() == (std::size_t{1} << algebra.atom_count()), "generated family is a sigma-algebra");

  std::vector<ExtReal> values;
  for (auto a : algebra.atoms()) values.push_back(measure_of(kit.base, (a & lay.x)));
  MeasureSpace out(std::move(algebra), std::move(values));
  ensure(static_cast<bool>(check_measure_embedding(kit.base, out)), "base embeds in the constructed space");
  return out;
}

void require_valid(const ExtensionKit& kit) {
  auto violations = validate_kit(kit);
  if (!violations.empty()) {
    throw Error(Errc::invalid_kit, "invalid kit: " + violations.front().code + ": " + violations.front().detail);
  }
}

Subset lift_pasted(Subset d, std::size_t offset) { return Subset(d.bits() << offset); }

}  // namespace

MeasureSpace construct_extension(const ExtensionKit& kit) {
  require_valid(kit);
  const auto lay = lay_out(kit);
  const auto& base = kit.base.algebra();

  std::vector<UltrafilterRecord> ultrafilters;
  for (auto key : lay.fiber_keys) ultrafilters.push_back(classify_family(up_set(base, std::span(&key, 1))));

  std::vector<Subset> family;
  for (auto b : base.members()) {
    Subset attached;
    for (std::size_t i = 0; i < ultrafilters.size(); ++i) {
      if (ultrafilters[i].contains(b)) attached |= lay.fiber_sets[i];
    }
    for (auto d : kit.dfamily.at(b.bits())) family.push_back(b | attached | lift_pasted(d, lay.z_offset));
  }
  return finish(kit, lay, std::move(family));
}

MeasureSpace construct_blowup_extension(const ExtensionKit& kit) {
  require_valid(kit);
  const auto lay = lay_out(kit);
  for (auto key : lay.fiber_keys) {
    if (key.size() != 1) {
      throw Error(Errc::precondition, "blow-up form needs singleton fiber keys");
    }
  }
  std::vector<Subset> family;
  for (auto b : kit.base.algebra().members()) {
    Subset attached;
    for (std::size_t i = 0; i < lay.fiber_keys.size(); ++i) {
      if (b.contains(static_cast<std::size_t>(lay.fiber_keys[i].lowest()))) attached |= lay.fiber_sets[i];
    }
    for (auto d : kit.dfamily.at(b.bits())) family.push_back(b | attached | lift_pasted(d, lay.z_offset));
  }
  return finish(kit, lay, std::move(family));
}

// ------------------------------------------------------------ decomposition

DecompositionRecord decompose_extension(const MeasureSpace& big, Subset x) {
  const auto& yg = big.ground();
  const auto small = induced_subspace(big, x);
  if (!check_measure_embedding(small, big)) {
    throw Error(Errc::precondition, "the induced trace space does not embed");
  }
  const auto& xg = small.ground();
  const auto members = big.algebra().members();
  const Subset outside = yg.complement(x);

  // Z: outside points covered by a measurable set missing X.
  Subset z;
  for (auto c : members) {
    if (!c.meets(x)) z |= c;
  }

  DecompositionRecord rec;
  rec.z_part = z;
  auto pasted = trace_algebra(big.algebra(), z);
  const auto& zg = pasted.ground();

  std::map<Mask, std::vector<Subset>> dfamily;
  for (auto c : members) {
    dfamily[transfer(c & x, yg, xg).bits()].push_back(transfer(c & z, yg, zg));
  }
  for (auto& [key, ds] : dfamily) sort_unique(ds);

  // U_p = {C & X : p in C} for the remaining outside points, grouped.
  std::map<Mask, std::vector<std::string>> fibers;
  std::map<Mask, SetFamily> seen_families;
  bool blowup = true;
  for (std::size_t p = 0; p < yg.size(); ++p) {
    if (!outside.contains(p)) continue;
    if (z.contains(p)) {
      rec.point_assignment.push_back({yg.label(p), true, Subset{}});
      continue;
    }
    std::vector<Subset> traces;
    for (auto c : members) {
      if (c.contains(p)) traces.push_back(transfer(c & x, yg, xg));
    }
    auto u = classify_family(SetFamily(small.algebra(), std::move(traces)));
    ensure(u.flags.is_ultrafilter && u.flags.has_cip, "U_p is an ultrafilter with c.i.p.");
    ensure(!u.flags.is_free, "no free ultrafilter with c.i.p. on a finite space");
    auto [it, fresh] = seen_families.try_emplace(u.kernel.bits(), u.family);
    ensure(fresh || it->second == u.family, "equal kernels mean equal ultrafilters");
    fibers[u.kernel.bits()].push_back(yg.label(p));
    if (u.kernel.size() != 1) blowup = false;
    rec.point_assignment.push_back({yg.label(p), false, u.kernel});
  }

  rec.kit = ExtensionKit{small, std::move(pasted), std::move(dfamily), std::move(fibers)};
  rec.form = blowup ? KitForm::blowup : KitForm::ultrafilter_only;
  return rec;
}

std::vector<OutsidePoint> classify_outside_points(const MeasureSpace& big, Subset x) {
  const auto& yg = big.ground();
  const auto small = induced_subspace(big, x);
  if (!check_measure_embedding(small, big)) {
    throw Error(Errc::precondition, "classify_outside_points requires an embedding");
  }
  const auto members = big.algebra().members();
  std::vector<OutsidePoint> out;
  for (std::size_t p = 0; p < yg.size(); ++p) {
    if (x.contains(p)) continue;
    OutsidePoint pt{yg.label(p), OutsideKind::pasted, {}};
    bool pasted = std::any_of(members.begin(), members.end(),
                              [&](Subset c) { return c.contains(p) && !c.meets(x); });
    if (!pasted) {
      for (std::size_t q = 0; q < yg.size(); ++q) {
        if (!x.contains(q)) continue;
        bool separable = std::any_of(members.begin(), members.end(),
                                     [&](Subset c) { return c.contains(p) && !c.contains(q); });
        if (!separable) pt.partners.push_back(yg.label(q));
      }
      pt.kind = pt.partners.empty() ? OutsideKind::separated : OutsideKind::sticks_to;
    }
    out.push_back(std::move(pt));
  }
  return out;
}

// -------------------------------------------------------------- enumeration

std::vector<MeasureSpace> enumerate_extensions(const MeasureSpace& base, std::span<const std::string> extra) {
  const auto& xg = base.ground();
  if (xg.size() + extra.size() > kEnumerationCap) {
    throw Error(Errc::size_cap, "enumeration is capped at " + std::to_string(kEnumerationCap) + " points");
  }
  for (const auto& l : extra) {
    if (xg.index_of(l)) throw Error(Errc::invalid_input, "extra label '" + l + "' is already a point of X");
  }
  std::vector<std::string> labels = xg.labels();
  labels.insert(labels.end(), extra.begin(), extra.end());
  GroundSet yg(std::move(labels));  // rejects duplicate extras
  const Subset x = xg.full();       // X occupies the low bits of Y

  std::vector<MeasureSpace> out;
  for_each_set_partition(yg.size(), [&](const std::vector<Subset>& blocks) {
    std::vector<Subset> traces;
    for (auto b : blocks) {
      if (auto t = b & x; !t.empty()) traces.push_back(t);
    }
    std::sort(traces.begin(), traces.end(), [](Subset a, Subset b) { return a.lowest() < b.lowest(); });
    if (traces != base.algebra().atoms()) return;
    SigmaAlgebra algebra(yg, blocks);
    std::vector<ExtReal> values;
    for (auto a : algebra.atoms()) values.push_back(measure_of(base, a & x));
    out.emplace_back(std::move(algebra), std::move(values));
  });
  std::sort(out.begin(), out.end(), [](const MeasureSpace& a, const MeasureSpace& b) {
    if (a.algebra().atoms() != b.algebra().atoms()) return a.algebra().atoms() < b.algebra().atoms();
    return a.atom_values() < b.atom_values();
  });
  return out;
}

}  // namespace measext
