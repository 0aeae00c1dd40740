#pragma once

namespace steadymps {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace steadymps
