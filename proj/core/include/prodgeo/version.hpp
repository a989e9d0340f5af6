#pragma once

namespace prodgeo {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace prodgeo
