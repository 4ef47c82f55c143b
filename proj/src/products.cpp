#include "measext/products.hpp"

#include <algorithm>

#include "measext/error.hpp"

namespace measext {

namespace {

std::string escape(std::string_view label) {
  std::string out;
  for (char c : label) {
    if (c == '|' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

void require_same(const SigmaAlgebra& a, const SigmaAlgebra& b, const char* what) {
  if (!(a == b)) throw Error(Errc::ground_mismatch, std::string(what) + " lives on a different algebra");
}

void require_cip_ultrafilter(const UltrafilterRecord& u, const char* op) {
  if (!u.flags.is_ultrafilter || !u.flags.has_cip) {
    throw Error(Errc::precondition, std::string(op) + " requires an ultrafilter with c.i.p.");
  }
}

}  // namespace

std::string pair_label(std::string_view x, std::string_view y) {
  return "(" + escape(x) + "|" + escape(y) + ")";
}

Subset ProductSpace::rectangle(Subset a, Subset b) const {
  left.ground().check(a);
  right.ground().check(b);
  Subset out;
  for (std::size_t i = 0; i < left.ground().size(); ++i) {
    if (!a.contains(i)) continue;
    for (std::size_t j = 0; j < right.ground().size(); ++j) {
      if (b.contains(j)) out |= Subset::singleton(pair_index(i, j));
    }
  }
  return out;
}

ProductSpace product_space(const MeasureSpace& left, const MeasureSpace& right) {
  const auto& lg = left.ground();
  const auto& rg = right.ground();
  if (lg.size() * rg.size() > kMaxPoints) {
    throw Error(Errc::size_cap, "product would have " + std::to_string(lg.size() * rg.size()) + " points");
  }
  std::vector<std::string> labels;
  for (const auto& x : lg.labels()) {
    for (const auto& y : rg.labels()) labels.push_back(pair_label(x, y));
  }
  ProductSpace ps{left, right, {}};
  GroundSet ground(std::move(labels));

  std::vector<Subset> atoms;
  std::vector<ExtReal> values;
  for (std::size_t i = 0; i < left.algebra().atom_count(); ++i) {
    for (std::size_t j = 0; j < right.algebra().atom_count(); ++j) {
      atoms.push_back(ps.rectangle(left.algebra().atoms()[i], right.algebra().atoms()[j]));
      values.push_back(left.atom_values()[i] * right.atom_values()[j]);
    }
  }
  // The constructor re-sorts atoms; pair every value with its atom first.
  std::vector<std::size_t> order(atoms.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return atoms[a].lowest() < atoms[b].lowest(); });
  std::vector<Subset> sorted_atoms;
  std::vector<ExtReal> sorted_values;
  for (auto k : order) {
    sorted_atoms.push_back(atoms[k]);
    sorted_values.push_back(values[k]);
  }
  SigmaAlgebra algebra(ground, std::move(sorted_atoms));

  std::vector<Subset> rectangles;
  for (auto a : left.algebra().members()) {
    for (auto b : right.algebra().members()) rectangles.push_back(ps.rectangle(a, b));
  }
  ensure(generate_sigma_algebra(ground, rectangles) == algebra, "rectangles generate the atom-product algebra");

  ps.product = MeasureSpace(std::move(algebra), std::move(sorted_values));
  return ps;
}

Subset y_section(const ProductSpace& ps, Subset set, std::string_view y) {
  if (!ps.product.algebra().contains(set)) throw Error(Errc::not_measurable, "y_section: set is not measurable");
  auto j = ps.right.ground().index_of(y);
  if (!j) throw Error(Errc::ground_mismatch, "y_section: '" + std::string(y) + "' is not a point of the right factor");
  Subset out;
  for (std::size_t i = 0; i < ps.left.ground().size(); ++i) {
    if (set.contains(ps.pair_index(i, *j))) out |= Subset::singleton(i);
  }
  ensure(ps.left.algebra().contains(out), "sections of measurable sets are measurable");
  return out;
}

UltrafilterRecord lift_ultrafilter(const ProductSpace& ps, const UltrafilterRecord& f, std::string_view y) {
  require_same(f.algebra(), ps.left.algebra(), "lift_ultrafilter: the ultrafilter");
  require_cip_ultrafilter(f, "lift_ultrafilter");
  auto j = ps.right.ground().index_of(y);
  if (!j) throw Error(Errc::ground_mismatch, "lift_ultrafilter: '" + std::string(y) + "' is not a point of the right factor");
  const Subset point = Subset::singleton(*j);
  if (!ps.right.algebra().contains(point)) {
    throw Error(Errc::precondition, "lift_ultrafilter: {" + std::string(y) + "} is not measurable");
  }
  std::vector<Subset> base;
  for (auto m : f.family.members()) base.push_back(ps.rectangle(m, point));
  auto h = extend_to_ultrafilter(SetFamily(ps.product.algebra(), std::move(base)));
  ensure(h.flags.has_cip, "lifted ultrafilter has c.i.p.");
  for (auto m : h.family.members()) {
    ensure(f.contains(y_section(ps, m, y)), "y-sections of the lift lie in the original ultrafilter");
  }
  return h;
}

std::pair<UltrafilterRecord, UltrafilterRecord> project_ultrafilter(const ProductSpace& ps,
                                                                    const UltrafilterRecord& h) {
  require_same(h.algebra(), ps.product.algebra(), "project_ultrafilter: the ultrafilter");
  require_cip_ultrafilter(h, "project_ultrafilter");
  if (!ps.left.algebra().separates_points() || !ps.right.algebra().separates_points()) {
    throw Error(Errc::precondition, "project_ultrafilter: both factors need measurable singletons");
  }
  const auto lm = ps.left.algebra().members();
  const auto rm = ps.right.algebra().members();

  std::vector<Subset> left_base, right_base;
  for (auto b : lm) {
    if (std::any_of(rm.begin(), rm.end(), [&](Subset c) { return h.contains(ps.rectangle(b, c)); })) {
      left_base.push_back(b);
    }
  }
  for (auto c : rm) {
    if (std::any_of(lm.begin(), lm.end(), [&](Subset b) { return h.contains(ps.rectangle(b, c)); })) {
      right_base.push_back(c);
    }
  }
  auto left = extend_to_ultrafilter(SetFamily(ps.left.algebra(), std::move(left_base)));
  auto right = extend_to_ultrafilter(SetFamily(ps.right.algebra(), std::move(right_base)));

  const Subset full_l = ps.left.ground().full();
  const Subset full_r = ps.right.ground().full();
  for (auto f : left.family.members()) ensure(h.contains(ps.rectangle(f, full_r)), "F x Y lies in h");
  for (auto g : right.family.members()) ensure(h.contains(ps.rectangle(full_l, g)), "X x G lies in h");

  const Subset pq = ps.rectangle(left.kernel, right.kernel);
  ensure(pq.size() == 1 && h.contains(pq) && h.kernel == pq, "the factor kernels reconstitute the product kernel");
  return {std::move(left), std::move(right)};
}

}  // namespace measext
