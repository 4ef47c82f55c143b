#include <doctest.h>

#include "measext/error.hpp"
#include "measext/products.hpp"
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

Labels digits(std::size_t m) {
  Labels out;
  for (std::size_t i = 1; i <= m; ++i) out.push_back(std::to_string(i));
  return out;
}

Subset pairs(const ProductSpace& ps, std::vector<std::pair<std::string, std::string>> points) {
  Labels names;
  for (auto& [x, y] : points) names.push_back(pair_label(x, y));
  return ps.product.ground().subset_of(names);
}

}  // namespace

TEST_CASE("pair labels escape separators") {
  CHECK(pair_label("a", "1") == "(a|1)");
  CHECK(pair_label("a|b", "c\\d") == "(a\\|b|c\\\\d)");
}

TEST_CASE("product_space examples") {
  auto left = space({"a", "b", "c"}, {{"a"}, {"b", "c"}}, {"1", "2"});
  auto right = space({"1", "2"}, {{"1"}, {"2"}}, {"3", "0"});
  auto ps = product_space(left, right);
  REQUIRE(ps.product.algebra().atom_count() == 4);
  std::vector<std::string> values;
  for (const auto& v : ps.product.atom_values()) values.push_back(v.str());
  CHECK(values == std::vector<std::string>{"3", "0", "6", "0"});
  CHECK(ps.product.ground().label(ps.pair_index(1, 0)) == "(b|1)");

  auto inf_zero = product_space(space({"a"}, {{"a"}}, {"inf"}), space({"1"}, {{"1"}}, {"0"}));
  CHECK(inf_zero.product.atom_values()[0].is_zero());

  auto trivial = product_space(left, space({"1"}, {{"1"}}, {"1"}));
  CHECK(trivial.product.algebra().atom_count() == left.algebra().atom_count());
  CHECK(trivial.product.atom_values() == left.atom_values());

  auto too_big = space(letters(5), {letters(5)}, {"1"});
  CHECK(code_of([&] { product_space(too_big, too_big); }) == Errc::size_cap);
}

TEST_CASE("rectangle algebra equals atom products and the measure multiplies") {
  const std::vector<ExtReal> choices{0, 1, inf()};
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t m = 1; m <= 3; ++m) {
      for (const auto& lb : oracle::partitions(static_cast<int>(n))) {
        for (const auto& rb : oracle::partitions(static_cast<int>(m))) {
          SigmaAlgebra la(ground(letters(n)), masks(lb));
          SigmaAlgebra ra(ground(digits(m)), masks(rb));
          auto shape = product_space(MeasureSpace(la, std::vector<ExtReal>(lb.size(), 1)),
                                     MeasureSpace(ra, std::vector<ExtReal>(rb.size(), 1)));
          oracle::Family rects;
          for (auto a : la.members()) {
            for (auto b : ra.members()) rects.push_back(shape.rectangle(a, b).bits());
          }
          auto got = raw(shape.product.algebra().members());
          std::sort(got.begin(), got.end());
          CHECK(got == oracle::closure(static_cast<int>(n * m), rects));
          for (auto s : shape.product.algebra().members()) {
            for (const auto& y : ra.ground().labels()) CHECK(member(la, y_section(shape, s, y)));
          }

          oracle::for_each_assignment(lb.size(), choices, [&](const std::vector<ExtReal>& lv) {
            oracle::for_each_assignment(rb.size(), choices, [&](const std::vector<ExtReal>& rv) {
              MeasureSpace l(la, lv);
              MeasureSpace r(ra, rv);
              auto ps = product_space(l, r);
              for (auto a : la.members()) {
                for (auto b : ra.members()) {
                  CHECK(measure_of(ps.product, ps.rectangle(a, b)) == measure_of(l, a) * measure_of(r, b));
                }
              }
            });
          });
        }
      }
    }
  }
}

TEST_CASE("y_section examples") {
  auto left = space({"a", "b", "c"}, {{"a"}, {"b", "c"}}, {"1", "2"});
  auto right = space({"1", "2"}, {{"1"}, {"2"}}, {"1", "1"});
  auto ps = product_space(left, right);
  auto rect = ps.rectangle(Subset(0b001), Subset(0b11));
  CHECK(y_section(ps, rect, "1") == Subset(0b001));
  CHECK(y_section(ps, Subset{}, "2").empty());
  auto mixed = pairs(ps, {{"a", "1"}, {"b", "2"}, {"c", "2"}});
  CHECK(y_section(ps, mixed, "2") == Subset(0b110));
  CHECK(code_of([&] { y_section(ps, rect, "9"); }) == Errc::ground_mismatch);
  CHECK(code_of([&] { y_section(ps, pairs(ps, {{"b", "1"}}), "1"); }) == Errc::not_measurable);
}

TEST_CASE("lift_ultrafilter examples") {
  auto left = space({"a", "b"}, {{"a"}, {"b"}}, {"1", "1"});
  auto right = space({"1", "2"}, {{"1"}, {"2"}}, {"1", "1"});
  auto ps = product_space(left, right);
  auto fa = enumerate_ultrafilters(left.algebra())[0];
  auto h = lift_ultrafilter(ps, fa, "1");
  CHECK(h.kernel == pairs(ps, {{"a", "1"}}));
  CHECK(h.flags.has_cip);

  auto coarse = space({"a", "b", "c"}, {{"a"}, {"b", "c"}}, {"1", "2"});
  auto cs = product_space(coarse, right);
  auto fbc = enumerate_ultrafilters(coarse.algebra())[1];
  CHECK(lift_ultrafilter(cs, fbc, "2").kernel == pairs(cs, {{"b", "2"}, {"c", "2"}}));

  auto lumped = product_space(left, space({"1", "2"}, {{"1", "2"}}, {"1"}));
  CHECK(code_of([&] { lift_ultrafilter(lumped, fa, "1"); }) == Errc::precondition);
}

TEST_CASE("project_ultrafilter examples") {
  auto left = space({"a", "b"}, {{"a"}, {"b"}}, {"1", "1"});
  auto right = space({"1", "2"}, {{"1"}, {"2"}}, {"1", "1"});
  auto ps = product_space(left, right);
  auto h = classify_family(up_set(ps.product.algebra(), std::vector<Subset>{pairs(ps, {{"a", "1"}})}));
  auto [l, r] = project_ultrafilter(ps, h);
  CHECK(l.kernel == Subset(0b01));
  CHECK(r.kernel == Subset(0b01));

  auto single = space({"x"}, {{"x"}}, {"1"});
  auto ts = product_space(single, right);
  auto ht = enumerate_ultrafilters(ts.product.algebra())[1];
  auto [tl, tr] = project_ultrafilter(ts, ht);
  CHECK(tl.kernel == single.ground().full());
  CHECK(tr.kernel == Subset(0b10));

  auto lumped = product_space(space({"a", "b"}, {{"a", "b"}}, {"1"}), right);
  auto hl = enumerate_ultrafilters(lumped.product.algebra())[0];
  CHECK(code_of([&] { project_ultrafilter(lumped, hl); }) == Errc::precondition);
}

TEST_CASE("projection undoes lifting on factors of up to 3 points") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t m = 1; m <= 3; ++m) {
      auto l = MeasureSpace(SigmaAlgebra::discrete(ground(letters(n))), std::vector<ExtReal>(n, 1));
      auto r = MeasureSpace(SigmaAlgebra::discrete(ground(digits(m))), std::vector<ExtReal>(m, 1));
      auto ps = product_space(l, r);
      for (const auto& f : enumerate_ultrafilters(l.algebra())) {
        for (const auto& y : r.ground().labels()) {
          auto [back, right] = project_ultrafilter(ps, lift_ultrafilter(ps, f, y));
          CHECK(back == f);
          CHECK(r.ground().labels_of(right.kernel) == Labels{y});
        }
      }
    }
  }
}
