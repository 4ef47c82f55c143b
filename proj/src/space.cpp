#include "measext/space.hpp"

#include <algorithm>
#include <set>

#include "measext/error.hpp"

namespace measext {

// ---------------------------------------------------------------- GroundSet

GroundSet::GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() > kMaxPoints) {
    throw Error(Errc::size_cap, "ground set has " + std::to_string(labels_.size()) +
                                    " points; the cap is " + std::to_string(kMaxPoints));
  }
  std::set<std::string_view> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw Error(Errc::invalid_input, "empty point label");
    if (l.find(',') != std::string::npos) {
      throw Error(Errc::invalid_input, "point label '" + l + "' contains ','");
    }
    if (!seen.insert(l).second) throw Error(Errc::invalid_input, "duplicate point label '" + l + "'");
  }
}

std::optional<std::size_t> GroundSet::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

Subset GroundSet::full() const noexcept {
  return Subset(labels_.size() >= 32 ? ~Mask{0} : (Mask{1} << labels_.size()) - 1);
}

Subset GroundSet::complement(Subset s) const {
  check(s);
  return full() - s;
}

void GroundSet::check(Subset s) const {
  if (!s.subset_of(full())) {
    throw Error(Errc::ground_mismatch,
                "subset mask " + std::to_string(s.bits()) + " exceeds a ground set of " +
                    std::to_string(size()) + " points");
  }
}

Subset GroundSet::subset_of(std::span<const std::string> names) const {
  Subset s;
  for (const auto& n : names) {
    auto i = index_of(n);
    if (!i) throw Error(Errc::ground_mismatch, "unknown point label '" + n + "'");
    s |= Subset::singleton(*i);
  }
  return s;
}

std::vector<std::string> GroundSet::labels_of(Subset s) const {
  check(s);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (s.contains(i)) out.push_back(labels_[i]);
  }
  return out;
}

// ------------------------------------------------------------- SigmaAlgebra

SigmaAlgebra::SigmaAlgebra(GroundSet ground, std::vector<Subset> atoms)
    : ground_(std::move(ground)), atoms_(std::move(atoms)) {
  Subset covered;
  for (auto a : atoms_) {
    ground_.check(a);
    if (a.empty()) throw Error(Errc::invalid_partition, "empty atom");
    if (a.meets(covered)) throw Error(Errc::invalid_partition, "atoms overlap");
    covered |= a;
  }
  if (covered != ground_.full()) {
    throw Error(Errc::invalid_partition, "atoms do not cover the ground set");
  }
  std::sort(atoms_.begin(), atoms_.end(),
            [](Subset a, Subset b) { return a.lowest() < b.lowest(); });
}

SigmaAlgebra SigmaAlgebra::discrete(GroundSet ground) {
  std::vector<Subset> atoms;
  for (std::size_t i = 0; i < ground.size(); ++i) atoms.push_back(Subset::singleton(i));
  return SigmaAlgebra(std::move(ground), std::move(atoms));
}

SigmaAlgebra SigmaAlgebra::trivial(GroundSet ground) {
  std::vector<Subset> atoms;
  if (!ground.empty()) atoms.push_back(ground.full());
  return SigmaAlgebra(std::move(ground), std::move(atoms));
}

bool SigmaAlgebra::contains(Subset s) const {
  ground_.check(s);
  return std::all_of(atoms_.begin(), atoms_.end(), [s](Subset a) {
    auto common = a & s;
    return common.empty() || common == a;
  });
}

std::size_t SigmaAlgebra::atom_index_of(std::size_t point) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].contains(point)) return i;
  }
  throw Error(Errc::ground_mismatch, "point index " + std::to_string(point) + " out of range");
}

Subset SigmaAlgebra::union_of_atoms(Mask selection) const {
  Subset s;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if ((selection >> i) & 1U) s |= atoms_[i];
  }
  return s;
}

std::vector<Subset> SigmaAlgebra::members() const {
  const Mask n = Mask{1} << atoms_.size();
  std::vector<Subset> out;
  out.reserve(n);
  for (Mask sel = 0; sel < n; ++sel) out.push_back(union_of_atoms(sel));
  return out;
}

bool SigmaAlgebra::separates_points() const {
  return std::all_of(atoms_.begin(), atoms_.end(), [](Subset a) { return a.size() == 1; });
}

// ------------------------------------------------------------- MeasureSpace

MeasureSpace::MeasureSpace(SigmaAlgebra algebra, std::vector<ExtReal> atom_values)
    : algebra_(std::move(algebra)), values_(std::move(atom_values)) {
  if (values_.size() != algebra_.atom_count()) {
    throw Error(Errc::invalid_input, "expected " + std::to_string(algebra_.atom_count()) +
                                         " atom values, got " + std::to_string(values_.size()));
  }
}

SigmaAlgebra generate_sigma_algebra(const GroundSet& ground, std::span<const Subset> generators) {
  std::vector<Subset> blocks;
  if (!ground.empty()) blocks.push_back(ground.full());
  for (auto g : generators) {
    ground.check(g);
    std::vector<Subset> refined;
    for (auto b : blocks) {
      if (auto in = b & g; !in.empty()) refined.push_back(in);
      if (auto out = b - g; !out.empty()) refined.push_back(out);
    }
    blocks = std::move(refined);
  }
  return SigmaAlgebra(ground, std::move(blocks));
}

bool member(const SigmaAlgebra& algebra, Subset s) { return algebra.contains(s); }

ExtReal measure_of(const MeasureSpace& ms, Subset s) {
  if (!ms.algebra().contains(s)) {
    std::string joined;
    for (const auto& l : ms.ground().labels_of(s)) joined += (joined.empty() ? "" : ",") + l;
    throw Error(Errc::not_measurable, "set {" + joined + "} is not measurable");
  }
  ExtReal total;
  const auto& atoms = ms.algebra().atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].subset_of(s)) total += ms.atom_values()[i];
  }
  return total;
}

// The finite algebra is scanned exhaustively; every infimum and supremum
// below is attained.

ExtReal outer_measure(const MeasureSpace& ms, Subset s) {
  ms.ground().check(s);
  std::optional<ExtReal> best;
  for (auto c : ms.algebra().members()) {
    if (!s.subset_of(c)) continue;
    auto v = measure_of(ms, c);
    if (!best || v < *best) best = v;
  }
  return *best;  // the whole ground set always qualifies
}

ExtReal inner_measure(const MeasureSpace& ms, Subset s) {
  ms.ground().check(s);
  ExtReal best;
  for (auto c : ms.algebra().members()) {
    if (!c.subset_of(s)) continue;
    auto v = measure_of(ms, c);
    if (best < v) best = v;
  }
  return best;
}

bool is_thick(const MeasureSpace& ms, Subset x) {
  return inner_measure(ms, ms.ground().complement(x)).is_zero();
}

bool is_sigma_finite(const MeasureSpace& ms) {
  return std::none_of(ms.atom_values().begin(), ms.atom_values().end(),
                      [](const ExtReal& v) { return v.is_infinite(); });
}

SigmaAlgebra trace_algebra(const SigmaAlgebra& big, Subset x) {
  const auto& ground = big.ground();
  ground.check(x);
  GroundSet sub(ground.labels_of(x));
  std::vector<Subset> atoms;
  for (auto a : big.atoms()) {
    if (auto t = a & x; !t.empty()) atoms.push_back(transfer(t, ground, sub));
  }
  return SigmaAlgebra(std::move(sub), std::move(atoms));
}

Subset transfer(Subset s, const GroundSet& from, const GroundSet& to) {
  from.check(s);
  Subset out;
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (!s.contains(i)) continue;
    auto j = to.index_of(from.label(i));
    if (!j) throw Error(Errc::ground_mismatch, "point '" + from.label(i) + "' is not in the target ground set");
    out |= Subset::singleton(*j);
  }
  return out;
}

MeasureSpace reorder_points(const MeasureSpace& ms, std::span<const std::string> order) {
  GroundSet target(std::vector<std::string>(order.begin(), order.end()));
  if (target.size() != ms.ground().size()) {
    throw Error(Errc::ground_mismatch, "reordering must list every point exactly once");
  }
  std::vector<Subset> atoms;
  std::vector<ExtReal> values;
  const auto& old_atoms = ms.algebra().atoms();
  for (std::size_t i = 0; i < old_atoms.size(); ++i) {
    atoms.push_back(transfer(old_atoms[i], ms.ground(), target));
  }
  // Atoms are re-sorted by the constructor; carry values along.
  std::vector<std::size_t> idx(atoms.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return atoms[a].lowest() < atoms[b].lowest(); });
  std::vector<Subset> sorted_atoms;
  for (auto i : idx) {
    sorted_atoms.push_back(atoms[i]);
    values.push_back(ms.atom_values()[i]);
  }
  return MeasureSpace(SigmaAlgebra(std::move(target), std::move(sorted_atoms)), std::move(values));
}

void for_each_set_partition(std::size_t n, const std::function<void(const std::vector<Subset>&)>& visit) {
  if (n > kMaxPoints) throw Error(Errc::size_cap, "partition enumeration beyond the point cap");
  if (n == 0) {
    visit({});
    return;
  }
  // Restricted growth strings: rgs[0] = 0, rgs[i] <= 1 + max(rgs[0..i-1]).
  std::vector<std::size_t> rgs(n, 0), maxima(n, 0);
  std::vector<Subset> blocks;
  while (true) {
    blocks.assign(maxima[n - 1] + 1, Subset{});
    for (std::size_t i = 0; i < n; ++i) blocks[rgs[i]] |= Subset::singleton(i);
    visit(blocks);

    std::size_t i = n - 1;
    while (i > 0 && rgs[i] == maxima[i - 1] + 1) --i;
    if (i == 0) return;
    ++rgs[i];
    maxima[i] = std::max(maxima[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      maxima[j] = maxima[i];
    }
  }
}

}  // namespace measext
