#pragma once

namespace jtdet {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace jtdet
