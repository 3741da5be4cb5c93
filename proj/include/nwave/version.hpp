#ifndef NWAVE_VERSION_HPP
#define NWAVE_VERSION_HPP

namespace nwave {

inline constexpr const char* version = "1.0.0";

}

#endif
