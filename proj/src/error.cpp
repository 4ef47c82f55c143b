#include "measext/error.hpp"

namespace measext {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::ground_mismatch: return "ground_mismatch";
    case Errc::not_measurable: return "not_measurable";
    case Errc::precondition: return "precondition";
    case Errc::invalid_partition: return "invalid_partition";
    case Errc::invalid_kit: return "invalid_kit";
    case Errc::size_cap: return "size_cap";
    case Errc::invalid_input: return "invalid_input";
  }
  return "unknown";
}

}  // namespace measext
