#pragma once

namespace qp::version {

inline constexpr int schema = 1;
inline constexpr const char* core = "1.0.0";
inline constexpr const char* lattice = "1.0.0";
inline constexpr const char* projgeom = "1.0.0";
inline constexpr const char* gamble = "1.0.0";
inline constexpr const char* polytope = "1.0.0";
inline constexpr const char* witness = "1.0.0";
inline constexpr const char* cli = "1.0.0";

}  // namespace qp::version
