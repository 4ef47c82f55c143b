#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace measext {

enum class Errc {
  ground_mismatch,
  not_measurable,
  precondition,
  invalid_partition,
  invalid_kit,
  size_cap,
  invalid_input,
};

std::string_view to_string(Errc code);

// All library failures are reported through this type. `path` locates the
// offending input (file name and/or JSON pointer) when one is known.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::string path = {})
      : std::runtime_error(message), code_(code), path_(std::move(path)) {}

  Errc code() const noexcept { return code_; }
  const std::string& path() const noexcept { return path_; }

 private:
  Errc code_;
  std::string path_;
};

/// Guards an identity the mathematics guarantees. A failure is a bug in
/// this library, not bad input.
inline void ensure(bool condition, const char* what) {
  if (!condition) throw std::logic_error(std::string("internal invariant violated: ") + what);
}

}  // namespace measext
