#include "mgmcast/system_config.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "mgmcast/errors.hpp"

namespace mgmcast {

std::optional<SchemeId> scheme_from_name(std::string_view name) {
  for (SchemeId s : kAllSchemes) {
    if (scheme_name(s) == name) return s;
  }
  return std::nullopt;
}

int SystemConfig::total_users() const {
  return std::accumulate(group_sizes.begin(), group_sizes.end(), 0);
}

int SystemConfig::user_offset(int group) const {
  return std::accumulate(group_sizes.begin(), group_sizes.begin() + group, 0);
}

int SystemConfig::group_of_user(int user) const {
  int off = 0;
  for (int j = 0; j < n_groups(); ++j) {
    off += group_sizes[j];
    if (user < off) return j;
  }
  throw InvalidArgument("user index " + std::to_string(user) +
                        " out of range");
}

void SystemConfig::validate() const {
  if (n_antennas < 1) throw InvalidArgument("n_antennas must be >= 1");
  if (group_sizes.empty()) throw InvalidArgument("group_sizes must be nonempty");
  for (int k : group_sizes) {
    if (k < 1) throw InvalidArgument("every group size must be >= 1");
  }
  if (coherence_symbols < n_groups()) {
    throw InvalidArgument(
        "coherence_symbols must be >= number of groups; no scheme can train "
        "otherwise");
  }
  if (dl_power_budget < 0.0) throw InvalidArgument("dl_power_budget must be >= 0");
  if (static_cast<int>(ul_power_caps.size()) != total_users()) {
    throw InvalidArgument("ul_power_caps must have one entry per user");
  }
  for (double cap : ul_power_caps) {
    if (cap < 0.0) throw InvalidArgument("uplink power caps must be >= 0");
  }
  if (carrier_bw_hz <= 0.0) throw InvalidArgument("carrier_bw_hz must be > 0");
  if (cell_radius_m <= 0.0) throw InvalidArgument("cell_radius_m must be > 0");
  if (exclusion_radius_m < 0.0 || exclusion_radius_m >= cell_radius_m) {
    throw InvalidArgument("exclusion_radius_m must lie in [0, cell_radius_m)");
  }
  if (pathloss_exponent <= 0.0) throw InvalidArgument("pathloss_exponent must be > 0");
  if (pathloss_ref <= 0.0) throw InvalidArgument("pathloss_ref must be > 0");
}

double noise_power_watts(double noise_psd_dbm_per_hz, double bw_hz) {
  if (bw_hz <= 0.0) throw InvalidArgument("bandwidth must be > 0");
  const double dbw = noise_psd_dbm_per_hz + 10.0 * std::log10(bw_hz) - 30.0;
  return std::pow(10.0, dbw / 10.0);
}

double normalize_power(double p_watts, double noise_psd_dbm_per_hz,
                       double bw_hz) {
  if (p_watts < 0.0) throw InvalidArgument("power must be >= 0");
  return p_watts / noise_power_watts(noise_psd_dbm_per_hz, bw_hz);
}

Feasibility scheme_feasible(SchemeId scheme, const SystemConfig& config) {
  config.validate();
  const int n = config.n_antennas;
  const int g = config.n_groups();
  const int k_tot = config.total_users();
  const int t = config.coherence_symbols;

  const auto fail = [](std::string reason) {
    return Feasibility{false, std::move(reason)};
  };

  // Pilot-length feasibility: the grid {tau_min, .., T-1} must be nonempty.
  if (uses_dedicated_pilots(scheme)) {
    if (t <= k_tot) {
      return fail("coherence_symbols <= K_tot: no room for dedicated pilots");
    }
  } else {
    if (t <= g) {
      return fail("coherence_symbols <= G: no room for group pilots");
    }
  }

  switch (scheme) {
    case SchemeId::MrtUndp:
    case SchemeId::MrtMudp:
    case SchemeId::MrtMucp:
      return Feasibility{true, ""};
    case SchemeId::ZfUndp:
      if (n <= k_tot) return fail("N <= K_tot: zero-forcing all users needs N > K_tot");
      return Feasibility{true, ""};
    case SchemeId::ZfMudp: {
      int nu_max = 0;
      for (int j = 0; j < g; ++j) nu_max = std::max(nu_max, k_tot - config.group_sizes[j]);
      if (n <= nu_max) {
        return fail("N <= nu_max = K_tot - min group size: cross-group nulling infeasible");
      }
      return Feasibility{true, ""};
    }
    case SchemeId::ZfMucp:
      if (n <= g) return fail("N <= G: group-level zero-forcing needs N > G");
      return Feasibility{true, ""};
  }
  return fail("unknown scheme");
}

}  // namespace mgmcast
