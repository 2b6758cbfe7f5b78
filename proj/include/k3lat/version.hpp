#pragma once

namespace k3lat {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace k3lat
