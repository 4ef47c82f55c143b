#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "measext/filters.hpp"
#include "measext/space.hpp"

namespace measext {

/// Outcome of an embedding check. False verdicts carry a counterexample set.
struct Verdict {
  bool ok = false;
  /// Labels of the counterexample set, and which space they belong to
  /// ("small" or "big").
  std::optional<std::vector<std::string>> witness;
  std::string witness_space;
  std::string reason;

  explicit operator bool() const noexcept { return ok; }
};

/// (X, B) sits in (Y, C) iff X is a subset of Y and B = {C & X : C in C}.
/// Throws Errc::ground_mismatch if some point of X is missing from Y.
Verdict check_measurable_embedding(const SigmaAlgebra& small, const SigmaAlgebra& big);

/// Measurable embedding plus lambda(C) = mu(C & X) for every C in the big
/// algebra, checked exhaustively.
Verdict check_measure_embedding(const MeasureSpace& small, const MeasureSpace& big);

/// X is thick in `big` and mu agrees with the outer measure of `big` on B.
/// This is the induced-measure side of the thick-subspace characterization.
/// Throws Errc::precondition unless the measurable embedding holds.
bool thick_with_induced_measure(const MeasureSpace& small, const MeasureSpace& big);

/// check_measure_embedding(small, big) == thick_with_induced_measure(small, big).
bool check_thickness_equivalence(const MeasureSpace& small, const MeasureSpace& big);

/// The trace space on `x` with mu(C & x) = lambda(C).
/// Throws Errc::precondition when the trace measure is not well defined
/// (some C disjoint from `x` has positive measure).
MeasureSpace induced_subspace(const MeasureSpace& big, Subset x);

/// Data generating an extension of `base`:
///  - `pasted` is the measurable space (Z, D) glued on beside X;
///  - `dfamily[B]` is D_B, a nonempty set of D-measurable sets, one entry per
///    measurable B of the base (keys are base masks, values pasted masks);
///  - `fibers[k]` lists the fresh points attached to the principal ultrafilter
///    at base atom k (equivalently, blown up from the point of a singleton k).
struct ExtensionKit {
  MeasureSpace base;
  SigmaAlgebra pasted;
  std::map<Mask, std::vector<Subset>> dfamily;
  std::map<Mask, std::vector<std::string>> fibers;

  friend bool operator==(const ExtensionKit&, const ExtensionKit&) = default;
};

struct KitViolation {
  std::string code;
  std::string detail;
};

/// Every violated kit invariant; empty means valid. The union condition is checked
/// on pairs, which covers all finite selections by induction.
std::vector<KitViolation> validate_kit(const ExtensionKit& kit);

/// Kit with no fibers, Z empty and D_B = {empty} for every B.
ExtensionKit identity_kit(const MeasureSpace& base);
/// "<u>#1", "<u>#2", ... where u names the kernel's points (joined by '+').
std::vector<std::string> fresh_fiber_labels(const GroundSet& base, Subset kernel, std::size_t count);
/// Namespaced label for a pasted point.
std::string pasted_label(std::string_view name);

/// Builds (Y, C, lambda) with fibers attached through ultrafilter
/// membership: C = B + union{S_U : B in U} + D. Points are ordered X, then
/// fibers in base-atom order, then Z. Throws Errc::invalid_kit if
/// validate_kit reports anything.
MeasureSpace construct_extension(const ExtensionKit& kit);

/// Same space through the point-indexed form C = B + union{T_u : u in B} + D.
/// Requires every fiber key to be a singleton.
MeasureSpace construct_blowup_extension(const ExtensionKit& kit);

enum class KitForm {
  blowup,           // every fiber kernel is a single point
  ultrafilter_only  // some kernel has several points; only the ultrafilter-indexed form applies
};

struct PointAssignment {
  std::string label;
  bool pasted = false;
  /// Kernel of U_p over the base ground when not pasted.
  Subset kernel;
};

struct DecompositionRecord {
  Subset z_part;  // over the big ground
  ExtensionKit kit;
  std::vector<PointAssignment> point_assignment;  // outside points, in big-ground order
  KitForm form = KitForm::blowup;
};

/// Recovers the canonical kit of an extension from (big, x).
/// Throws Errc::precondition unless the induced trace space embeds.
DecompositionRecord decompose_extension(const MeasureSpace& big, Subset x);

enum class OutsideKind { pasted, sticks_to, separated };

struct OutsidePoint {
  std::string label;
  OutsideKind kind = OutsideKind::pasted;
  /// Points of X that no measurable set separates from this point.
  std::vector<std::string> partners;
};

std::vector<OutsidePoint> classify_outside_points(const MeasureSpace& big, Subset x);

/// Every measure space on X + extra that `base` embeds in, one per set
/// partition of the new ground set with the right trace, sorted by atoms.
/// Throws Errc::size_cap beyond kEnumerationCap points.
std::vector<MeasureSpace> enumerate_extensions(const MeasureSpace& base, std::span<const std::string> extra);

}  // namespace measext
