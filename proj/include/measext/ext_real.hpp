#pragma once

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace measext {

using Rational = boost::multiprecision::cpp_rational;

/// A value in [0, +inf]: an exact nonnegative rational or the symbol +inf.
///
/// Arithmetic follows the measure-theoretic conventions: `a + inf = inf`
/// and `0 * inf = 0`.
class ExtReal {
 public:
  ExtReal() = default;
  ExtReal(long long value);  // NOLINT(google-explicit-constructor)
  explicit ExtReal(Rational value);

  static ExtReal infinity();

  /// Accepts "inf", integers ("3"), fractions ("2/3") and decimal
  /// fractions ("0.25"). Negative values are rejected.
  static ExtReal parse(std::string_view text);

  bool is_infinite() const noexcept { return infinite_; }
  bool is_zero() const noexcept { return !infinite_ && value_ == 0; }
  const Rational& finite_value() const;

  /// Canonical text: "inf", "p" or "p/q" in lowest terms.
  std::string str() const;

  ExtReal& operator+=(const ExtReal& other);
  friend ExtReal operator+(ExtReal lhs, const ExtReal& rhs) { return lhs += rhs; }
  friend ExtReal operator*(const ExtReal& lhs, const ExtReal& rhs);

  friend bool operator==(const ExtReal& lhs, const ExtReal& rhs);
  friend std::strong_ordering operator<=>(const ExtReal& lhs, const ExtReal& rhs);

 private:
  bool infinite_ = false;
  Rational value_ = 0;
};

std::ostream& operator<<(std::ostream& os, const ExtReal& value);

}  // namespace measext
