#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "measext/ext_real.hpp"

namespace measext {

/// Hard cap on ground-set size (width of a subset bitmask).
inline constexpr std::size_t kMaxPoints = 16;
/// Largest ground set the brute-force enumerators accept.
inline constexpr std::size_t kEnumerationCap = 8;

using Mask = std::uint32_t;

/// A subset of some ground set, one bit per point (bit i is label i).
/// A Subset carries no reference to its ground set; every operation that
/// receives one together with a space checks the width.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(Mask bits) : bits_(bits) {}

  static constexpr Subset singleton(std::size_t index) { return Subset(Mask{1} << index); }

  constexpr Mask bits() const noexcept { return bits_; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr bool contains(std::size_t index) const noexcept { return (bits_ >> index) & 1U; }
  constexpr bool subset_of(Subset other) const noexcept { return (bits_ & ~other.bits_) == 0; }
  constexpr bool meets(Subset other) const noexcept { return (bits_ & other.bits_) != 0; }
  int size() const noexcept { return std::popcount(bits_); }
  /// Index of the least member, or -1 for the empty set.
  int lowest() const noexcept { return bits_ == 0 ? -1 : std::countr_zero(bits_); }

  constexpr Subset& operator|=(Subset o) noexcept { bits_ |= o.bits_; return *this; }
  constexpr Subset& operator&=(Subset o) noexcept { bits_ &= o.bits_; return *this; }
  friend constexpr Subset operator|(Subset a, Subset b) noexcept { return Subset(a.bits_ | b.bits_); }
  friend constexpr Subset operator&(Subset a, Subset b) noexcept { return Subset(a.bits_ & b.bits_); }
  /// Set difference.
  friend constexpr Subset operator-(Subset a, Subset b) noexcept { return Subset(a.bits_ & ~b.bits_); }

  friend constexpr bool operator==(Subset, Subset) = default;
  friend constexpr auto operator<=>(Subset, Subset) = default;

 private:
  Mask bits_ = 0;
};

/// An ordered list of distinct labels; position i is bit i of every Subset
/// over this ground set. The order is fixed at creation.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t index) const { return labels_.at(index); }
  std::optional<std::size_t> index_of(std::string_view label) const;

  Subset full() const noexcept;
  Subset complement(Subset s) const;
  /// Throws Errc::ground_mismatch if `s` has bits beyond this ground set.
  void check(Subset s) const;

  /// Subset named by labels; unknown labels are a ground mismatch.
  Subset subset_of(std::span<const std::string> names) const;
  std::vector<std::string> labels_of(Subset s) const;

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  std::vector<std::string> labels_;
};

/// A sigma-algebra on a finite ground set, stored as its atom partition.
/// Atoms are pairwise disjoint, nonempty, cover the ground set, and are kept
/// sorted by least member index, so equal algebras compare equal member-wise.
class SigmaAlgebra {
 public:
  SigmaAlgebra() = default;
  SigmaAlgebra(GroundSet ground, std::vector<Subset> atoms);

  static SigmaAlgebra discrete(GroundSet ground);
  static SigmaAlgebra trivial(GroundSet ground);

  const GroundSet& ground() const noexcept { return ground_; }
  const std::vector<Subset>& atoms() const noexcept { return atoms_; }
  std::size_t atom_count() const noexcept { return atoms_.size(); }

  /// True iff `s` is a union of atoms.
  bool contains(Subset s) const;
  std::size_t atom_index_of(std::size_t point) const;
  Subset atom_of(std::size_t point) const { return atoms_[atom_index_of(point)]; }

  /// Union of the atoms whose indices are set in `selection`.
  Subset union_of_atoms(Mask selection) const;
  /// Every measurable set; element i is union_of_atoms(i).
  std::vector<Subset> members() const;

  /// True iff every atom is a singleton.
  bool separates_points() const;

  friend bool operator==(const SigmaAlgebra&, const SigmaAlgebra&) = default;

 private:
  GroundSet ground_;
  std::vector<Subset> atoms_;
};

/// A finite measure space: one extended value per atom. mu(B) is the sum of
/// the values of the atoms inside B.
class MeasureSpace {
 public:
  MeasureSpace() = default;
  MeasureSpace(SigmaAlgebra algebra, std::vector<ExtReal> atom_values);

  const SigmaAlgebra& algebra() const noexcept { return algebra_; }
  const GroundSet& ground() const noexcept { return algebra_.ground(); }
  const std::vector<ExtReal>& atom_values() const noexcept { return values_; }

  friend bool operator==(const MeasureSpace&, const MeasureSpace&) = default;

 private:
  SigmaAlgebra algebra_;
  std::vector<ExtReal> values_;
};

SigmaAlgebra generate_sigma_algebra(const GroundSet& ground, std::span<const Subset> generators);
bool member(const SigmaAlgebra& algebra, Subset s);

/// Throws Errc::not_measurable for non-measurable `s`.
ExtReal measure_of(const MeasureSpace& ms, Subset s);
/// Infimum of mu(C) over measurable C containing `s`.
ExtReal outer_measure(const MeasureSpace& ms, Subset s);
/// Supremum of mu(C) over measurable C contained in `s`.
ExtReal inner_measure(const MeasureSpace& ms, Subset s);
/// `x` is thick iff its complement has inner measure zero.
bool is_thick(const MeasureSpace& ms, Subset x);
/// On a finite space: no atom carries the value inf.
bool is_sigma_finite(const MeasureSpace& ms);

/// The trace {C & x : C measurable}, as an algebra on the labels of `x`
/// (kept in the order they have in the big ground set).
SigmaAlgebra trace_algebra(const SigmaAlgebra& big, Subset x);

/// Re-expresses `s` (over `from`) over `to`, matching points by label.
Subset transfer(Subset s, const GroundSet& from, const GroundSet& to);

/// The same space with its points listed in `order` (a permutation of the
/// current labels).
MeasureSpace reorder_points(const MeasureSpace& ms, std::span<const std::string> order);

/// Calls `visit` with the blocks of every set partition of {0..n-1}, in
/// restricted-growth-string order.
void for_each_set_partition(std::size_t n, const std::function<void(const std::vector<Subset>&)>& visit);

}  // namespace measext
