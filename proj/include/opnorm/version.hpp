#pragma once

namespace opnorm {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace opnorm
