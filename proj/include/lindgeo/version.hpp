#pragma once

namespace lindgeo {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lindgeo
