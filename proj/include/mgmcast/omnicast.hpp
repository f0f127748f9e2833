#pragma once

#include <cstdint>

#include "mgmcast/channel.hpp"
#include "mgmcast/system_config.hpp"

namespace mgmcast {

struct OmnicastResult {
  double se = 0.0;  // bits/s/Hz
  int n_drops = 0;
  int n_fading_samples = 0;
  double std_error = 0.0;
};

/// Worst-user spectral efficiency of a CSI-free isotropic broadcast that
/// time-shares the G streams: for each user, the small-scale average of
/// (1/G) log2(1 + P ||h||^2) conditioned on its path loss; the minimum over
/// users is then averaged over drops. ||h||^2/beta is a sum of N unit-mean
/// exponentials.
OmnicastResult omnicast_se(const SystemConfig& config, int n_drops,
                           int n_fading_samples, std::uint64_t seed);

/// Per-drop inner value: min over the profile's users of the conditional
/// small-scale mean. Exposed so fixed-profile checks can target one drop.
double omnicast_min_se_for_profile(const SystemConfig& config,
                                   const FadingProfile& profile,
                                   int n_fading_samples, std::uint64_t seed);

}  // namespace mgmcast
