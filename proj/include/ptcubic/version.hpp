#pragma once

namespace ptcubic {

inline constexpr const char* kVersion = "1.0.0";

}
