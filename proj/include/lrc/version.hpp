#ifndef LRC_VERSION_HPP
#define LRC_VERSION_HPP

namespace lrc {
inline constexpr const char* kToolVersion = "1.0.0";
}

#endif
