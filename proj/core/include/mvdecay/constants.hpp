#pragma once

namespace mvdecay {

inline constexpr double euler_gamma = 0.577215664901532860606512090082;
inline constexpr double pi = 3.14159265358979323846264338327950288;

inline constexpr const char* version_string = "0.1.0";

} // namespace mvdecay
