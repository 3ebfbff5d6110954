#pragma once

namespace redchain {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace redchain
