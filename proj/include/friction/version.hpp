#ifndef FRICTION_VERSION_HPP
#define FRICTION_VERSION_HPP

namespace friction {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace friction

#endif
