#pragma once

namespace conduit {

inline constexpr const char* kToolName = "conduit-scan";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace conduit
