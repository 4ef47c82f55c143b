#include "measext/ext_real.hpp"

#include <cctype>
#include <ostream>

#include "measext/error.hpp"

namespace measext {

namespace {

using boost::multiprecision::cpp_int;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad_value(std::string_view text) {
  throw Error(Errc::invalid_input, "malformed measure value '" + std::string(text) + "'");
}

}  // namespace

ExtReal::ExtReal(long long value) : value_(value) {
  if (value < 0) throw Error(Errc::invalid_input, "measure values must be nonnegative");
}

ExtReal::ExtReal(Rational value) : value_(std::move(value)) {
  if (value_ < 0) throw Error(Errc::invalid_input, "measure values must be nonnegative");
}

ExtReal ExtReal::infinity() {
  ExtReal r;
  r.infinite_ = true;
  return r;
}

ExtReal ExtReal::parse(std::string_view text) {
  if (text == "inf" || text == "+inf") return infinity();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_value(text);
    cpp_int d(std::string{den});
    if (d == 0) bad_value(text);
    return ExtReal(Rational(cpp_int(std::string{num}), d));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) bad_value(text);
    cpp_int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    cpp_int num = cpp_int(std::string{whole}) * scale + cpp_int(std::string{frac});
    return ExtReal(Rational(num, scale));
  }
  if (!all_digits(text)) bad_value(text);
  return ExtReal(Rational(cpp_int(std::string{text})));
}

const Rational& ExtReal::finite_value() const {
  if (infinite_) throw Error(Errc::precondition, "finite_value() called on inf");
  return value_;
}

std::string ExtReal::str() const {
  if (infinite_) return "inf";
  return value_.str();
}

ExtReal& ExtReal::operator+=(const ExtReal& other) {
  if (infinite_ || other.infinite_) {
    infinite_ = true;
    value_ = 0;
  } else {
    value_ += other.value_;
  }
  return *this;
}

ExtReal operator*(const ExtReal& lhs, const ExtReal& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return ExtReal{};
  if (lhs.infinite_ || rhs.infinite_) return ExtReal::infinity();
  return ExtReal(lhs.value_ * rhs.value_);
}

bool operator==(const ExtReal& lhs, const ExtReal& rhs) {
  if (lhs.infinite_ || rhs.infinite_) return lhs.infinite_ == rhs.infinite_;
  return lhs.value_ == rhs.value_;
}

std::strong_ordering operator<=>(const ExtReal& lhs, const ExtReal& rhs) {
  if (lhs.infinite_ || rhs.infinite_) return lhs.infinite_ <=> rhs.infinite_;
  if (lhs.value_ < rhs.value_) return std::strong_ordering::less;
  if (lhs.value_ > rhs.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const ExtReal& value) { return os << value.str(); }

}  // namespace measext
