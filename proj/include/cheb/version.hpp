#pragma once

namespace cheb {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace cheb
