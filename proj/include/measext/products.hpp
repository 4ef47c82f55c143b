#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "measext/filters.hpp"
#include "measext/space.hpp"

namespace measext {

/// Product of two finite measure spaces. Point (i, j) of the product has
/// index i * |right| + j and label "(x|y)", with '|' and '\' in factor
/// labels escaped by a backslash.
struct ProductSpace {
  MeasureSpace left;
  MeasureSpace right;
  MeasureSpace product;

  std::size_t pair_index(std::size_t i, std::size_t j) const { return i * right.ground().size() + j; }
  /// The rectangle a x b as a product subset.
  Subset rectangle(Subset a, Subset b) const;
};

std::string pair_label(std::string_view x, std::string_view y);

/// Atoms are the products of factor atoms; values multiply with 0 * inf = 0.
/// The atom-product algebra is checked against the algebra generated by all
/// measurable rectangles.
ProductSpace product_space(const MeasureSpace& left, const MeasureSpace& right);

/// {x : (x, y) in set}, a subset of the left ground set.
/// Throws Errc::not_measurable for a non-measurable `set` and
/// Errc::ground_mismatch when `y` is not a right label.
Subset y_section(const ProductSpace& ps, Subset set, std::string_view y);

/// Ultrafilter on the product extending {F x {y} : F in f}.
/// Throws Errc::precondition if {y} is not measurable in the right factor.
UltrafilterRecord lift_ultrafilter(const ProductSpace& ps, const UltrafilterRecord& f, std::string_view y);

/// Factor ultrafilters extending {B : B x C in h for some C} and its mirror.
/// Both factors must have measurable singletons.
std::pair<UltrafilterRecord, UltrafilterRecord> project_ultrafilter(const ProductSpace& ps,
                                                                    const UltrafilterRecord& h);

}  // namespace measext
