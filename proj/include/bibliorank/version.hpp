#pragma once

namespace bibliorank {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bibliorank
