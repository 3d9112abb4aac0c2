#pragma once

namespace onslab {
inline constexpr const char* kVersion = "0.1.0";
}
