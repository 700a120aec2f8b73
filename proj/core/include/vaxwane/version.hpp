#pragma once

namespace vaxwane {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace vaxwane
