#pragma once

#include <optional>
#include <span>
#include <vector>

#include "measext/space.hpp"

namespace measext {

/// A family of measurable sets of one algebra. Members are kept sorted by
/// mask and free of duplicates.
class SetFamily {
 public:
  SetFamily() = default;
  /// Throws Errc::not_measurable if some member is not in `algebra`.
  SetFamily(SigmaAlgebra algebra, std::vector<Subset> members);

  const SigmaAlgebra& algebra() const noexcept { return algebra_; }
  const std::vector<Subset>& members() const noexcept { return members_; }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(Subset s) const;

  /// Intersection of all members; the whole ground set for an empty family.
  Subset kernel() const;

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

 private:
  SigmaAlgebra algebra_;
  std::vector<Subset> members_;
};

struct FamilyFlags {
  bool is_filter_base = false;
  bool is_filter = false;
  bool is_ultrafilter = false;
  bool has_cip = false;
  bool is_free = false;

  friend bool operator==(const FamilyFlags&, const FamilyFlags&) = default;
};

struct UltrafilterRecord {
  SetFamily family;
  Subset kernel;
  FamilyFlags flags;

  const SigmaAlgebra& algebra() const noexcept { return family.algebra(); }
  bool contains(Subset s) const { return family.contains(s); }

  friend bool operator==(const UltrafilterRecord&, const UltrafilterRecord&) = default;
};

/// All measurable sets containing some seed.
SetFamily up_set(const SigmaAlgebra& algebra, std::span<const Subset> seeds);

/// Classifies a family by the textbook definitions, evaluated directly
/// against the finite algebra.
UltrafilterRecord classify_family(const SetFamily& family);

/// One principal ultrafilter per atom, in atom order.
std::vector<UltrafilterRecord> enumerate_ultrafilters(const SigmaAlgebra& algebra);

/// Exactly one of `b` and its complement belongs to `u`.
bool check_dichotomy(const UltrafilterRecord& u, Subset b);

/// Whether (union of `sets` in u) <=> (some member of `sets` in u) holds.
/// The empty union is the empty set.
bool check_union_membership(const UltrafilterRecord& u, std::span<const Subset> sets);

/// Smallest-index extension: the principal ultrafilter of the first atom
/// inside the kernel of `base`. Throws Errc::precondition unless `base` is a
/// filter-base.
UltrafilterRecord extend_to_ultrafilter(const SetFamily& base);

/// A measure taking only the values 0 and 1. At most one atom has value 1.
class ZeroOneMeasure {
 public:
  /// Throws Errc::invalid_input if `space` takes a value outside {0, 1}.
  explicit ZeroOneMeasure(MeasureSpace space);

  const MeasureSpace& space() const noexcept { return space_; }
  /// mu(X) = 1.
  bool nontrivial() const noexcept { return unit_atom_.has_value(); }
  /// The atom of value 1, if any.
  std::optional<Subset> unit_atom() const noexcept { return unit_atom_; }

  friend bool operator==(const ZeroOneMeasure&, const ZeroOneMeasure&) = default;

 private:
  MeasureSpace space_;
  std::optional<Subset> unit_atom_;
};

ZeroOneMeasure measure_from_ultrafilter(const UltrafilterRecord& u);
/// Throws Errc::precondition for the zero measure.
UltrafilterRecord ultrafilter_from_01_measure(const ZeroOneMeasure& m);

/// Every point lies in some measurable null set.
bool null_sets_cover(const MeasureSpace& ms);

/// mu(union of family) == sup over the family of mu(C).
/// Throws Errc::precondition when the null sets of `m` do not cover the
/// ground set or the family is empty, and Errc::not_measurable when the union
/// is not measurable.
bool check_sup_property(const ZeroOneMeasure& m, const SetFamily& family);

/// Up-set of `f` inside `super`, where the ground of `f` is a measurable
/// subset X of the super ground and f's algebra is {C in super : C within X}.
/// Throws Errc::precondition on a trace mismatch.
UltrafilterRecord lift_to_superspace(const UltrafilterRecord& f, const SigmaAlgebra& super);

/// Ultrafilter on the trace algebra over `x` extending {H & x : H in h}.
/// Throws Errc::precondition if some member of `h` misses `x`.
UltrafilterRecord restrict_by_trace(const UltrafilterRecord& h, Subset x);

}  // namespace measext
