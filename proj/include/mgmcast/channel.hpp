#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mgmcast/system_config.hpp"

namespace mgmcast {

/// Large-scale fading for one user drop: distances and the path-loss
/// coefficients beta derived from them, flattened group-major.
struct FadingProfile {
  std::vector<double> distances_m;
  std::vector<double> betas;

  int total_users() const { return static_cast<int>(betas.size()); }
};

/// One small-scale realization: column u of `channels` is the length-N
/// channel vector of flattened user u, drawn CN(0, beta_u I).
struct ChannelRealization {
  Eigen::MatrixXcd channels;  // N x K_tot
  FadingProfile profile;

  int n_antennas() const { return static_cast<int>(channels.rows()); }
  int total_users() const { return static_cast<int>(channels.cols()); }
};

/// beta = pathloss_ref / x^pathloss_exponent.
double pathloss_beta(const SystemConfig& config, double distance_m);

/// Places users uniformly over the annulus between the exclusion radius and
/// the cell radius. Deterministic in (config, seed).
FadingProfile drop_users(const SystemConfig& config, std::uint64_t seed);

/// Independent Rayleigh fading: i.i.d. CN(0, beta_u) entries per user.
/// Deterministic in (profile, n_antennas, seed).
ChannelRealization draw_channels(const FadingProfile& profile, int n_antennas,
                                 std::uint64_t seed);

}  // namespace mgmcast
