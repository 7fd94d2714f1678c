#pragma once

namespace hpcmodel {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hpcmodel
