#pragma once

#include <string>
#include <vector>

#include "mgmcast/scheme.hpp"

namespace mgmcast {

/// Scenario description shared by every module. Powers are noise-normalized
/// (sigma^2 = 1); convert physical watts at the boundary with
/// normalize_power(). Immutable by convention after construction.
struct SystemConfig {
  int n_antennas = 0;               // N
  std::vector<int> group_sizes;     // K_1..K_G
  int coherence_symbols = 0;        // T
  double dl_power_budget = 0.0;     // P
  std::vector<double> ul_power_caps;  // per user, flattened group-major

  double carrier_bw_hz = 2.0e7;
  double noise_psd_dbm_per_hz = -174.0;
  double cell_radius_m = 500.0;
  double exclusion_radius_m = 35.0;
  double pathloss_exponent = 3.76;
  double pathloss_ref = 2.9512092266663856e-4;  // 10^-3.53

  int n_groups() const { return static_cast<int>(group_sizes.size()); }
  int total_users() const;

  /// Start of group j's block in flattened user order.
  int user_offset(int group) const;
  int group_of_user(int user) const;

  /// Throws InvalidArgument if any structural invariant is violated.
  void validate() const;
};

/// Noise power in watts for a PSD given in dBm/Hz over a bandwidth in Hz.
double noise_power_watts(double noise_psd_dbm_per_hz, double bw_hz);

/// Physical watts -> noise-normalized power (sigma^2 = 1 units).
double normalize_power(double p_watts, double noise_psd_dbm_per_hz,
                       double bw_hz);

struct Feasibility {
  bool ok = false;
  std::string reason;  // machine-readable, empty when ok
  explicit operator bool() const { return ok; }
};

/// Strict feasibility: the SINR coefficient (N - kappa) and the prelog
/// (1 - tau/T) must both be strictly positive for some admissible pilot
/// length.
Feasibility scheme_feasible(SchemeId scheme, const SystemConfig& config);

}  // namespace mgmcast
