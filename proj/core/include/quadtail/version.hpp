#pragma once

namespace quadtail {

inline constexpr const char* version = "1.0.0";

} // namespace quadtail
