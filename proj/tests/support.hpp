#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "measext/filters.hpp"
#include "measext/space.hpp"

namespace support {

using namespace measext;
using Labels = std::vector<std::string>;

inline GroundSet ground(Labels labels) { return GroundSet(std::move(labels)); }

inline Subset set(const GroundSet& g, Labels names) { return g.subset_of(names); }

inline SigmaAlgebra algebra(Labels points, std::vector<Labels> atoms) {
  GroundSet g(std::move(points));
  std::vector<Subset> masks;
  for (auto& a : atoms) masks.push_back(g.subset_of(a));
  return SigmaAlgebra(g, masks);
}

inline MeasureSpace space(Labels points, std::vector<Labels> atoms, std::vector<std::string> values) {
  std::vector<ExtReal> v;
  for (const auto& s : values) v.push_back(ExtReal::parse(s));
  return MeasureSpace(algebra(std::move(points), std::move(atoms)), std::move(v));
}

inline SetFamily family(const SigmaAlgebra& a, std::vector<Labels> members) {
  std::vector<Subset> masks;
  for (auto& m : members) masks.push_back(a.ground().subset_of(m));
  return SetFamily(a, masks);
}

inline Labels letters(std::size_t n) {
  Labels out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

inline std::vector<Subset> masks(const std::vector<std::uint32_t>& raw) {
  std::vector<Subset> out;
  for (auto m : raw) out.emplace_back(m);
  return out;
}

inline std::vector<std::uint32_t> raw(const std::vector<Subset>& sets) {
  std::vector<std::uint32_t> out;
  for (auto s : sets) out.push_back(s.bits());
  return out;
}

inline ExtReal inf() { return ExtReal::infinity(); }

}  // namespace support
