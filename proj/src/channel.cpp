#include "mgmcast/channel.hpp"

#include <cmath>

#include "mgmcast/errors.hpp"
#include "mgmcast/rng.hpp"

namespace mgmcast {

double pathloss_beta(const SystemConfig& config, double distance_m) {
  if (distance_m <= 0.0) throw InvalidArgument("distance must be > 0");
  return config.pathloss_ref / std::pow(distance_m, config.pathloss_exponent);
}

FadingProfile drop_users(const SystemConfig& config, std::uint64_t seed) {
  config.validate();
  const int k_tot = config.total_users();
  const double r_in2 = config.exclusion_radius_m * config.exclusion_radius_m;
  const double r_out2 = config.cell_radius_m * config.cell_radius_m;

  RandomStream stream(seed);
  FadingProfile profile;
  profile.distances_m.resize(k_tot);
  profile.betas.resize(k_tot);
  for (int u = 0; u < k_tot; ++u) {
    // Uniform over the annulus area: radius CDF (x^2 - r_in^2)/(r_out^2 - r_in^2).
    const double x = std::sqrt(r_in2 + stream.uniform() * (r_out2 - r_in2));
    profile.distances_m[u] = x;
    profile.betas[u] = pathloss_beta(config, x);
  }
  return profile;
}

ChannelRealization draw_channels(const FadingProfile& profile, int n_antennas,
                                 std::uint64_t seed) {
  if (n_antennas < 1) throw InvalidArgument("n_antennas must be >= 1");
  const int k_tot = profile.total_users();

  ChannelRealization real;
  real.channels.resize(n_antennas, k_tot);
  real.profile = profile;
  RandomStream stream(seed);
  for (int u = 0; u < k_tot; ++u) {
    const double beta = profile.betas[u];
    for (int n = 0; n < n_antennas; ++n) {
      real.channels(n, u) = stream.cgauss(beta);
    }
  }
  return real;
}

}  // namespace mgmcast
