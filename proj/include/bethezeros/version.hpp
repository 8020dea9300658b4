#ifndef BETHEZEROS_VERSION_HPP
#define BETHEZEROS_VERSION_HPP

namespace bethezeros {

inline constexpr const char* kToolName = "bethe-zeros";
inline constexpr const char* kVersion = "0.1.0";

} // namespace bethezeros

#endif
