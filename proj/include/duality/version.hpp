#pragma once

namespace duality {

inline constexpr const char* kVersion = "0.1.0";

} // namespace duality
