#include <doctest.h>

#include "measext/error.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace support;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::invalid_input;
}

const auto kABC = algebra({"a", "b", "c"}, {{"a"}, {"b"}, {"c"}});

}  // namespace

TEST_CASE("classify_family examples") {
  auto ab = algebra({"a", "b"}, {{"a"}, {"b"}});
  auto u = classify_family(family(ab, {{"a"}, {"a", "b"}}));
  CHECK(u.flags.is_ultrafilter);
  CHECK(u.kernel == Subset(0b01));
  CHECK(u.flags.has_cip);
  CHECK_FALSE(u.flags.is_free);

  auto f = classify_family(family(ab, {{"a", "b"}}));
  CHECK(f.flags.is_filter);
  CHECK_FALSE(f.flags.is_ultrafilter);

  auto g = classify_family(family(kABC, {{"a", "b"}, {"b", "c"}}));
  CHECK_FALSE(g.flags.is_filter);
  CHECK_FALSE(g.flags.is_filter_base);

  auto empty = classify_family(family(kABC, {}));
  CHECK_FALSE(empty.flags.is_filter_base);
  CHECK_FALSE(empty.flags.is_filter);

  auto with_empty = classify_family(family(kABC, {{}, {"a"}}));
  CHECK_FALSE(with_empty.flags.is_filter);
  CHECK(with_empty.flags.is_free);

  auto coarse = algebra({"a", "b", "c"}, {{"a"}, {"b", "c"}});
  CHECK(code_of([&] { family(coarse, {{"b"}}); }) == Errc::not_measurable);
}

TEST_CASE("classification flags against brute-force definitions on 3 points") {
  for (const auto& blocks : oracle::partitions(3)) {
    SigmaAlgebra a(ground(letters(3)), masks(blocks));
    auto members = raw(a.members());
    std::sort(members.begin(), members.end());
    auto ultras = oracle::ultrafilters_by_scan(members);
    for (std::uint64_t sel = 0; sel < (std::uint64_t{1} << members.size()); ++sel) {
      oracle::Family f;
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (sel >> i & 1) f.push_back(members[i]);
      }
      auto r = classify_family(SetFamily(a, masks(f)));
      CHECK(r.flags.is_filter == oracle::is_filter(members, f));
      bool ultra = std::find(ultras.begin(), ultras.end(), f) != ultras.end();
      CHECK(r.flags.is_ultrafilter == ultra);
      CHECK(r.flags.has_cip == oracle::cip_by_subfamilies(f, 3));
      CHECK(r.flags.is_free == (r.kernel.empty()));
    }
  }
}

TEST_CASE("enumerate_ultrafilters examples") {
  auto two = enumerate_ultrafilters(algebra({"a", "b", "c"}, {{"a"}, {"b", "c"}}));
  REQUIRE(two.size() == 2);
  CHECK(two[0].kernel == Subset(0b001));
  CHECK(two[1].kernel == Subset(0b110));
  CHECK(enumerate_ultrafilters(algebra({"a", "b", "c"}, {{"a", "b", "c"}})).size() == 1);
  auto three = enumerate_ultrafilters(kABC);
  CHECK(three.size() == 3);
  for (const auto& u : three) {
    CHECK(u.flags.has_cip);
    CHECK_FALSE(u.flags.is_free);
  }
}

TEST_CASE("no free ultrafilter with c.i.p. on algebras of up to 5 points") {
  for (int n = 0; n <= 5; ++n) {
    for (const auto& blocks : oracle::partitions(n)) {
      SigmaAlgebra a(ground(letters(n)), masks(blocks));
      auto us = enumerate_ultrafilters(a);
      CHECK(us.size() == a.atom_count());
      for (const auto& u : us) {
        CHECK(u.flags.is_ultrafilter);
        CHECK_FALSE((u.flags.is_free && u.flags.has_cip));
      }
    }
  }
}

TEST_CASE("check_dichotomy examples") {
  auto ab = algebra({"a", "b"}, {{"a"}, {"b"}});
  auto u = classify_family(family(ab, {{"a"}, {"a", "b"}}));
  CHECK(check_dichotomy(u, Subset(0b11)));
  CHECK(check_dichotomy(u, Subset(0b10)));
  auto f = classify_family(family(ab, {{"a", "b"}}));
  CHECK(code_of([&] { check_dichotomy(f, Subset(0b01)); }) == Errc::precondition);
  CHECK(code_of([&] { check_dichotomy(u, Subset(0b100)); }) == Errc::ground_mismatch);
}

TEST_CASE("check_dichotomy on every algebra of up to 5 points") {
  for (int n = 1; n <= 5; ++n) {
    for (const auto& blocks : oracle::partitions(n)) {
      SigmaAlgebra a(ground(letters(n)), masks(blocks));
      for (const auto& u : enumerate_ultrafilters(a)) {
        for (auto b : a.members()) CHECK(check_dichotomy(u, b));
      }
    }
  }
}

TEST_CASE("check_union_membership examples") {
  auto u = enumerate_ultrafilters(kABC)[0];
  REQUIRE(u.kernel == Subset(0b001));
  std::vector<Subset> hit{Subset(0b010), Subset(0b101)};
  CHECK(check_union_membership(u, hit));
  std::vector<Subset> miss{Subset(0b010), Subset(0b100)};
  CHECK(check_union_membership(u, miss));
  CHECK(check_union_membership(u, {}));
  auto f = classify_family(family(kABC, {{"a", "b", "c"}}));
  CHECK(code_of([&] { check_union_membership(f, hit); }) == Errc::precondition);
}

TEST_CASE("extend_to_ultrafilter examples") {
  CHECK(extend_to_ultrafilter(family(kABC, {{"a", "b"}})).kernel == Subset(0b001));
  CHECK(extend_to_ultrafilter(family(kABC, {{"c"}})).kernel == Subset(0b100));
  CHECK(code_of([&] { extend_to_ultrafilter(family(kABC, {{"a"}, {"b"}})); }) == Errc::precondition);
  CHECK(code_of([&] { extend_to_ultrafilter(family(kABC, {{}})); }) == Errc::precondition);
  CHECK(code_of([&] { extend_to_ultrafilter(family(kABC, {})); }) == Errc::precondition);
}

TEST_CASE("extensions of filter-bases contain the base") {
  for (const auto& blocks : oracle::partitions(4)) {
    SigmaAlgebra a(ground(letters(4)), masks(blocks));
    auto members = a.members();
    for (auto s : members) {
      for (auto t : members) {
        SetFamily base(a, {s, t});
        if (!classify_family(base).flags.is_filter_base) continue;
        auto u = extend_to_ultrafilter(base);
        CHECK(u.flags.is_ultrafilter);
        CHECK(u.contains(s));
        CHECK(u.contains(t));
      }
    }
  }
}

TEST_CASE("ultrafilter and 0-1 measure dictionary examples") {
  auto ub = enumerate_ultrafilters(kABC)[1];
  auto m = measure_from_ultrafilter(ub);
  CHECK(measure_of(m.space(), Subset(0b011)) == ExtReal(1));
  CHECK(measure_of(m.space(), Subset(0b101)) == ExtReal(0));
  auto ua = enumerate_ultrafilters(kABC)[0];
  auto ma = measure_from_ultrafilter(ua);
  CHECK(measure_of(ma.space(), Subset(0b111)) == ExtReal(1));
  CHECK(measure_of(ma.space(), Subset{}) == ExtReal(0));
  for (auto s : kABC.members()) {
    for (auto t : kABC.members()) {
      if (!s.meets(t)) CHECK(measure_of(m.space(), s | t) == measure_of(m.space(), s) + measure_of(m.space(), t));
    }
  }

  ZeroOneMeasure unit_b(MeasureSpace(kABC, {0, 1, 0}));
  CHECK(ultrafilter_from_01_measure(unit_b).kernel == Subset(0b010));
  ZeroOneMeasure zero(MeasureSpace(kABC, {0, 0, 0}));
  CHECK(code_of([&] { ultrafilter_from_01_measure(zero); }) == Errc::precondition);
  CHECK(code_of([&] { ZeroOneMeasure(MeasureSpace(kABC, {1, 1, 0})); }) == Errc::invalid_input);
  CHECK(code_of([&] { ZeroOneMeasure(MeasureSpace(kABC, {2, 0, 0})); }) == Errc::invalid_input);
  auto f = classify_family(family(kABC, {{"a", "b", "c"}}));
  CHECK(code_of([&] { measure_from_ultrafilter(f); }) == Errc::precondition);

  auto coarse = algebra({"a", "b", "c"}, {{"a"}, {"b", "c"}});
  for (Subset unit : coarse.atoms()) {
    std::vector<ExtReal> values;
    for (auto atom : coarse.atoms()) values.push_back(atom == unit ? 1 : 0);
    ZeroOneMeasure zm(MeasureSpace(coarse, values));
    CHECK(measure_from_ultrafilter(ultrafilter_from_01_measure(zm)) == zm);
  }
  for (const auto& u : enumerate_ultrafilters(coarse)) {
    CHECK(ultrafilter_from_01_measure(measure_from_ultrafilter(u)) == u);
  }
}

TEST_CASE("check_sup_property examples") {
  ZeroOneMeasure zero(MeasureSpace(kABC, {0, 0, 0}));
  CHECK(check_sup_property(zero, SetFamily(kABC, kABC.atoms())));
  CHECK(check_sup_property(zero, family(kABC, {{}})));
  ZeroOneMeasure unit(MeasureSpace(kABC, {1, 0, 0}));
  CHECK(code_of([&] { check_sup_property(unit, SetFamily(kABC, kABC.atoms())); }) == Errc::precondition);
  CHECK(code_of([&] { check_sup_property(zero, family(kABC, {})); }) == Errc::precondition);
}

TEST_CASE("lift_to_superspace examples") {
  auto x = algebra({"a", "b"}, {{"a"}, {"b"}});
  auto y = algebra({"a", "b", "c"}, {{"a"}, {"b"}, {"c"}});
  auto us = enumerate_ultrafilters(x);
  auto ga = lift_to_superspace(us[0], y);
  CHECK(ga.kernel == Subset(0b001));
  CHECK(ga.flags.is_ultrafilter);
  CHECK(ga.flags.has_cip);
  CHECK(lift_to_superspace(us[1], y).kernel == Subset(0b010));

  auto glued = algebra({"a", "b", "c"}, {{"a"}, {"b", "c"}});
  CHECK(code_of([&] { lift_to_superspace(us[0], glued); }) == Errc::precondition);
  auto coarse_x = algebra({"a", "b"}, {{"a", "b"}});
  CHECK(code_of([&] { lift_to_superspace(enumerate_ultrafilters(coarse_x)[0], y); }) == Errc::precondition);
}

TEST_CASE("restrict_by_trace examples") {
  auto y = algebra({"a", "b", "p"}, {{"a"}, {"b"}, {"p"}});
  auto x = set(y.ground(), {"a", "b"});
  auto us = enumerate_ultrafilters(y);
  auto r = restrict_by_trace(us[0], x);
  CHECK(r.algebra().ground().labels() == Labels{"a", "b"});
  CHECK(r.kernel == Subset(0b01));
  CHECK(code_of([&] { restrict_by_trace(us[2], x); }) == Errc::precondition);

  auto glued = algebra({"a", "b", "p"}, {{"a", "p"}, {"b"}});
  auto h = enumerate_ultrafilters(glued)[0];
  REQUIRE(h.kernel == set(glued.ground(), {"a", "p"}));
  CHECK(restrict_by_trace(h, set(glued.ground(), {"a", "b"})).kernel == Subset(0b01));
}

TEST_CASE("restrict_by_trace undoes lift_to_superspace") {
  // X = first k points, measurable in every algebra on 4 points that splits it off.
  for (const auto& blocks : oracle::partitions(4)) {
    SigmaAlgebra super(ground(letters(4)), masks(blocks));
    for (oracle::Mask xm = 1; xm < 16; ++xm) {
      Subset x(xm);
      if (!member(super, x)) continue;
      auto sub = trace_algebra(super, x);
      for (const auto& f : enumerate_ultrafilters(sub)) {
        auto g = lift_to_superspace(f, super);
        CHECK(transfer(f.kernel, sub.ground(), super.ground()) == g.kernel);
        CHECK(restrict_by_trace(g, x) == f);
      }
    }
  }
}
