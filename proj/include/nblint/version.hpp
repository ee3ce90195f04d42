#pragma once

namespace nblint {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nblint
