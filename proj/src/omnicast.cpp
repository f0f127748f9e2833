#include "mgmcast/omnicast.hpp"

#include <cmath>
#include <limits>

#include "mgmcast/errors.hpp"
#include "mgmcast/rng.hpp"

namespace mgmcast {

double omnicast_min_se_for_profile(const SystemConfig& config,
                                   const FadingProfile& profile,
                                   int n_fading_samples, std::uint64_t seed) {
  if (n_fading_samples < 1) throw InvalidArgument("n_fading_samples must be >= 1");
  const double p = config.dl_power_budget;
  const double inv_g = 1.0 / static_cast<double>(config.n_groups());

  double worst = std::numeric_limits<double>::infinity();
  for (int u = 0; u < profile.total_users(); ++u) {
    RandomStream stream(substream(seed, static_cast<std::uint64_t>(u)));
    const double beta = profile.betas[u];
    double acc = 0.0;
    for (int s = 0; s < n_fading_samples; ++s) {
      double channel_gain = 0.0;
      for (int n = 0; n < config.n_antennas; ++n) channel_gain += stream.exponential();
      acc += std::log2(1.0 + p * beta * channel_gain);
    }
    worst = std::min(worst, inv_g * acc / static_cast<double>(n_fading_samples));
  }
  return worst;
}

OmnicastResult omnicast_se(const SystemConfig& config, int n_drops,
                           int n_fading_samples, std::uint64_t seed) {
  config.validate();
  if (n_drops < 1) throw InvalidArgument("n_drops must be >= 1");

  OmnicastResult result;
  result.n_drops = n_drops;
  result.n_fading_samples = n_fading_samples;

  double sum = 0.0;
  double sum_sq = 0.0;
  for (int d = 0; d < n_drops; ++d) {
    const FadingProfile profile =
        drop_users(config, substream(seed, 2 * static_cast<std::uint64_t>(d)));
    const double value = omnicast_min_se_for_profile(
        config, profile, n_fading_samples,
        substream(seed, 2 * static_cast<std::uint64_t>(d) + 1));
    sum += value;
    sum_sq += value * value;
  }
  const double n = static_cast<double>(n_drops);
  result.se = sum / n;
  result.std_error =
      n > 1 ? std::sqrt(std::max(0.0, sum_sq / n - result.se * result.se) / n)
            : 0.0;
  return result;
}

}  // namespace mgmcast
