#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace mgmcast {

/// The six transmission schemes: {unicast, multicast} x {dedicated pilot,
/// co-pilot} x {MRT, ZF}, minus the unicast/co-pilot combinations.
enum class SchemeId {
  MrtUndp = 0,
  ZfUndp = 1,
  MrtMudp = 2,
  ZfMudp = 3,
  MrtMucp = 4,
  ZfMucp = 5,
};

inline constexpr std::array<SchemeId, 6> kAllSchemes = {
    SchemeId::MrtUndp, SchemeId::ZfUndp,  SchemeId::MrtMudp,
    SchemeId::ZfMudp,  SchemeId::MrtMucp, SchemeId::ZfMucp,
};

inline constexpr int scheme_index(SchemeId s) { return static_cast<int>(s); }

/// True for schemes estimating one channel per user (undp/mudp).
inline constexpr bool uses_dedicated_pilots(SchemeId s) {
  return s != SchemeId::MrtMucp && s != SchemeId::ZfMucp;
}

/// True for schemes transmitting one precoding vector per group.
inline constexpr bool is_multicast(SchemeId s) {
  return s != SchemeId::MrtUndp && s != SchemeId::ZfUndp;
}

inline constexpr bool is_zero_forcing(SchemeId s) {
  return s == SchemeId::ZfUndp || s == SchemeId::ZfMudp || s == SchemeId::ZfMucp;
}

constexpr std::string_view scheme_name(SchemeId s) {
  switch (s) {
    case SchemeId::MrtUndp: return "mrt-undp";
    case SchemeId::ZfUndp: return "zf-undp";
    case SchemeId::MrtMudp: return "mrt-mudp";
    case SchemeId::ZfMudp: return "zf-mudp";
    case SchemeId::MrtMucp: return "mrt-mucp";
    case SchemeId::ZfMucp: return "zf-mucp";
  }
  return "?";
}

std::optional<SchemeId> scheme_from_name(std::string_view name);

}  // namespace mgmcast
