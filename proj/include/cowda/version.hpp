#pragma once

namespace cowda {

inline constexpr const char* kVersion = "0.1.0";

}
