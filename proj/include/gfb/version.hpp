#pragma once

namespace gfb {
inline constexpr const char* kVersion = "0.1.0";
}
