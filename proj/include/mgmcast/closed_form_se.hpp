#pragma once

#include <vector>

#include "mgmcast/scheme.hpp"
#include "mgmcast/system_config.hpp"

namespace mgmcast {

/// Per-user spectral efficiencies for one scheme at one pilot length.
struct SePoint {
  SchemeId scheme;
  int tau_p = 0;
  std::vector<double> per_user_sinr;
  std::vector<double> per_user_se;  // bits/s/Hz
  double prelog = 0.0;              // 1 - tau_p / T
};

/// Closed-form effective SINR per user. `gammas` holds the per-user estimate
/// variances matching the scheme's pilot strategy (dedicated or co-pilot).
/// `dl_powers` is per user for dedicated-pilot schemes and per group for
/// co-pilot schemes.
std::vector<double> sinr_closed_form(SchemeId scheme,
                                     const SystemConfig& config,
                                     const std::vector<double>& betas,
                                     const std::vector<double>& gammas,
                                     const std::vector<double>& dl_powers);

/// Elementwise (1 - tau_p/T) log2(1 + sinr). Requires 0 < tau_p < T.
std::vector<double> se_from_sinr(const std::vector<double>& sinr, int tau_p,
                                 int coherence_symbols);

/// Convenience wrapper bundling the two steps above.
SePoint evaluate_se(SchemeId scheme, const SystemConfig& config,
                    const std::vector<double>& betas,
                    const std::vector<double>& gammas,
                    const std::vector<double>& dl_powers, int tau_p);

}  // namespace mgmcast
