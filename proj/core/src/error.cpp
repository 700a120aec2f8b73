#include "vaxwane/error.hpp"

namespace vaxwane {

void throw_no_events() { throw DataError("no events"); }

void throw_non_identifiable(const std::string& detail) {
  std::string msg = "non-identifiable";
  if (!detail.empty()) msg += ": " + detail;
  throw DataError(msg);
}

void throw_separation(const std::string& detail) {
  std::string msg = "monotone likelihood / separation";
  if (!detail.empty()) msg += ": " + detail;
  throw DataError(msg);
}

}  // namespace vaxwane
