#ifndef SCATTER_VERSION_HPP
#define SCATTER_VERSION_HPP

namespace scatter {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
