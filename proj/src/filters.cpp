#include "measext/filters.hpp"

#include <algorithm>

#include "measext/error.hpp"

namespace measext {

SetFamily::SetFamily(SigmaAlgebra algebra, std::vector<Subset> members)
    : algebra_(std::move(algebra)), members_(std::move(members)) {
  for (auto m : members_) {
    if (!algebra_.contains(m)) {
      throw Error(Errc::not_measurable, "family member is not measurable");
    }
  }
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool SetFamily::contains(Subset s) const {
  return std::binary_search(members_.begin(), members_.end(), s);
}

Subset SetFamily::kernel() const {
  Subset k = algebra_.ground().full();
  for (auto m : members_) k &= m;
  return k;
}

SetFamily up_set(const SigmaAlgebra& algebra, std::span<const Subset> seeds) {
  std::vector<Subset> out;
  for (auto c : algebra.members()) {
    if (std::any_of(seeds.begin(), seeds.end(), [c](Subset s) { return s.subset_of(c); })) {
      out.push_back(c);
    }
  }
  return SetFamily(algebra, std::move(out));
}

namespace {

bool is_filter_base(const SetFamily& f) {
  const auto& ms = f.members();
  if (ms.empty()) return false;
  for (auto a : ms) {
    for (auto b : ms) {
      auto lower = a & b;
      bool found = std::any_of(ms.begin(), ms.end(),
                               [lower](Subset c) { return !c.empty() && c.subset_of(lower); });
      if (!found) return false;
    }
  }
  return true;
}

bool is_upward_closed(const SetFamily& f, const std::vector<Subset>& measurable) {
  for (auto m : f.members()) {
    for (auto b : measurable) {
      if (m.subset_of(b) && !f.contains(b)) return false;
    }
  }
  return true;
}

// For every measurable B: B meets every member => B is a member.
bool is_maximal_by_meeting(const SetFamily& f, const std::vector<Subset>& measurable) {
  const auto& ms = f.members();
  for (auto b : measurable) {
    bool meets_all = std::all_of(ms.begin(), ms.end(), [b](Subset m) { return b.meets(m); });
    if (meets_all && !f.contains(b)) return false;
  }
  return true;
}

void require_ultrafilter(const UltrafilterRecord& u, const char* op) {
  if (!u.flags.is_ultrafilter) {
    throw Error(Errc::precondition, std::string(op) + " requires an ultrafilter");
  }
}

void require_cip(const UltrafilterRecord& u, const char* op) {
  require_ultrafilter(u, op);
  if (!u.flags.has_cip) {
    throw Error(Errc::precondition, std::string(op) + " requires the countable intersection property");
  }
}

}  // namespace

UltrafilterRecord classify_family(const SetFamily& family) {
  const auto measurable = family.algebra().members();
  UltrafilterRecord r{family, family.kernel(), {}};
  r.flags.is_filter_base = is_filter_base(family);
  r.flags.is_filter = r.flags.is_filter_base && is_upward_closed(family, measurable);
  r.flags.is_ultrafilter = r.flags.is_filter && is_maximal_by_meeting(family, measurable);
  // Countable subfamilies of a finite family are finite, and the smallest
  // finite intersection is the kernel.
  r.flags.has_cip = !r.kernel.empty();
  r.flags.is_free = r.kernel.empty();
  return r;
}

std::vector<UltrafilterRecord> enumerate_ultrafilters(const SigmaAlgebra& algebra) {
  std::vector<UltrafilterRecord> out;
  for (auto atom : algebra.atoms()) {
    auto rec = classify_family(up_set(algebra, std::span(&atom, 1)));
    ensure(rec.flags.is_ultrafilter && rec.kernel == atom, "principal up-set is an ultrafilter");
    out.push_back(std::move(rec));
  }
  return out;
}

bool check_dichotomy(const UltrafilterRecord& u, Subset b) {
  require_ultrafilter(u, "check_dichotomy");
  if (!u.algebra().contains(b)) throw Error(Errc::not_measurable, "check_dichotomy: set is not measurable");
  return u.contains(b) != u.contains(u.algebra().ground().complement(b));
}

bool check_union_membership(const UltrafilterRecord& u, std::span<const Subset> sets) {
  require_cip(u, "check_union_membership");
  Subset all;
  bool some = false;
  for (auto b : sets) {
    if (!u.algebra().contains(b)) {
      throw Error(Errc::not_measurable, "check_union_membership: set is not measurable");
    }
    all |= b;
    some = some || u.contains(b);
  }
  return u.contains(all) == some;
}

UltrafilterRecord extend_to_ultrafilter(const SetFamily& base) {
  if (!is_filter_base(base)) {
    throw Error(Errc::precondition, "extend_to_ultrafilter: family is not a filter-base");
  }
  // A finite filter-base has a least member, which is its kernel.
  const Subset kernel = base.kernel();
  for (auto atom : base.algebra().atoms()) {
    if (!atom.subset_of(kernel)) continue;
    auto rec = classify_family(up_set(base.algebra(), std::span(&atom, 1)));
    ensure(rec.flags.is_ultrafilter, "principal up-set is an ultrafilter");
    ensure(std::all_of(base.members().begin(), base.members().end(),
                       [&](Subset m) { return rec.contains(m); }),
           "extension contains the base");
    return rec;
  }
  ensure(false, "kernel of a filter-base contains an atom");
  return {};
}

// ----------------------------------------------------------- 0/1 measures

ZeroOneMeasure::ZeroOneMeasure(MeasureSpace space) : space_(std::move(space)) {
  const auto& values = space_.atom_values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].is_zero()) continue;
    if (values[i] != ExtReal(1)) {
      throw Error(Errc::invalid_input, "a {0,1}-valued measure may only take the values 0 and 1");
    }
    if (unit_atom_) {
      throw Error(Errc::invalid_input, "a {0,1}-valued measure has at most one atom of value 1");
    }
    unit_atom_ = space_.algebra().atoms()[i];
  }
}

ZeroOneMeasure measure_from_ultrafilter(const UltrafilterRecord& u) {
  require_ultrafilter(u, "measure_from_ultrafilter");
  const auto& atoms = u.algebra().atoms();
  std::vector<ExtReal> values;
  for (auto a : atoms) values.push_back(u.contains(a) ? ExtReal(1) : ExtReal(0));
  ZeroOneMeasure m(MeasureSpace(u.algebra(), std::move(values)));
  ensure(m.unit_atom() == u.kernel, "the kernel is the unit atom");
  return m;
}

UltrafilterRecord ultrafilter_from_01_measure(const ZeroOneMeasure& m) {
  if (!m.nontrivial()) {
    throw Error(Errc::precondition, "ultrafilter_from_01_measure: the measure is identically zero");
  }
  const auto& ms = m.space();
  std::vector<Subset> full_sets;
  for (auto c : ms.algebra().members()) {
    if (measure_of(ms, c) == ExtReal(1)) full_sets.push_back(c);
  }
  auto rec = classify_family(SetFamily(ms.algebra(), std::move(full_sets)));
  ensure(rec.flags.is_ultrafilter && rec.flags.has_cip, "{mu = 1} is an ultrafilter with c.i.p.");
  return rec;
}

bool null_sets_cover(const MeasureSpace& ms) {
  // The atom of a point is the least measurable set containing it.
  for (std::size_t p = 0; p < ms.ground().size(); ++p) {
    if (!ms.atom_values()[ms.algebra().atom_index_of(p)].is_zero()) return false;
  }
  return true;
}

bool check_sup_property(const ZeroOneMeasure& m, const SetFamily& family) {
  const auto& ms = m.space();
  if (!(family.algebra() == ms.algebra())) {
    throw Error(Errc::ground_mismatch, "check_sup_property: family lives on another algebra");
  }
  if (family.empty()) throw Error(Errc::precondition, "check_sup_property: family must be nonempty");
  if (!null_sets_cover(ms)) {
    throw Error(Errc::precondition, "check_sup_property: the null sets of the measure do not cover X");
  }
  Subset all;
  ExtReal sup;
  for (auto c : family.members()) {
    all |= c;
    if (auto v = measure_of(ms, c); sup < v) sup = v;
  }
  return measure_of(ms, all) == sup;
}

// ------------------------------------------------------- sub/super spaces

UltrafilterRecord lift_to_superspace(const UltrafilterRecord& f, const SigmaAlgebra& super) {
  require_ultrafilter(f, "lift_to_superspace");
  const auto& sub_ground = f.algebra().ground();
  const Subset x = transfer(sub_ground.full(), sub_ground, super.ground());
  if (!super.contains(x)) {
    throw Error(Errc::precondition, "lift_to_superspace: X is not measurable in the super algebra");
  }
  std::vector<Subset> inside;
  for (auto a : super.atoms()) {
    if (a.subset_of(x)) inside.push_back(transfer(a, super.ground(), sub_ground));
  }
  if (!(SigmaAlgebra(sub_ground, std::move(inside)) == f.algebra())) {
    throw Error(Errc::precondition, "lift_to_superspace: algebra is not the trace {C in super : C within X}");
  }
  std::vector<Subset> seeds;
  for (auto m : f.family.members()) seeds.push_back(transfer(m, sub_ground, super.ground()));
  auto g = classify_family(up_set(super, seeds));
  ensure(g.flags.is_ultrafilter && g.flags.has_cip, "lifted family is an ultrafilter with c.i.p.");
  ensure(g.flags.is_free == f.flags.is_free, "lifting preserves freeness");
  return g;
}

UltrafilterRecord restrict_by_trace(const UltrafilterRecord& h, Subset x) {
  require_cip(h, "restrict_by_trace");
  const auto& big = h.algebra();
  big.ground().check(x);
  for (auto m : h.family.members()) {
    if (!m.meets(x)) {
      throw Error(Errc::precondition, "restrict_by_trace: a member of the ultrafilter misses X");
    }
  }
  auto trace = trace_algebra(big, x);
  std::vector<Subset> traces;
  for (auto m : h.family.members()) traces.push_back(transfer(m & x, big.ground(), trace.ground()));
  auto f = extend_to_ultrafilter(SetFamily(trace, std::move(traces)));
  ensure(f.flags.has_cip, "restricted ultrafilter has c.i.p.");
  return f;
}

}  // namespace measext
