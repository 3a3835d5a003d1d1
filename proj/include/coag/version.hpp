#pragma once

namespace coag {

inline constexpr const char* version = "0.1.0";

} // namespace coag
