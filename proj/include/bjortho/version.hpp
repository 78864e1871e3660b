#pragma once

namespace bjortho {

inline constexpr const char* kLibraryVersion = "0.1.0";

}  // namespace bjortho
