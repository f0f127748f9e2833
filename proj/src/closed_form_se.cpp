#include "mgmcast/closed_form_se.hpp"

#include <cmath>
#include <numeric>

#include "mgmcast/errors.hpp"

namespace mgmcast {

std::vector<double> sinr_closed_form(SchemeId scheme,
                                     const SystemConfig& config,
                                     const std::vector<double>& betas,
                                     const std::vector<double>& gammas,
                                     const std::vector<double>& dl_powers) {
  const int k_tot = config.total_users();
  const int g = config.n_groups();
  const double n = static_cast<double>(config.n_antennas);

  if (static_cast<int>(betas.size()) != k_tot ||
      static_cast<int>(gammas.size()) != k_tot) {
    throw InvalidArgument("betas and gammas must have one entry per user");
  }
  const int expected_dim = uses_dedicated_pilots(scheme) ? k_tot : g;
  if (static_cast<int>(dl_powers.size()) != expected_dim) {
    throw InvalidArgument(
        "dl_powers dimension does not match the scheme's pilot strategy "
        "(per-user for dedicated pilots, per-group for co-pilot)");
  }

  const double total_power =
      std::accumulate(dl_powers.begin(), dl_powers.end(), 0.0);

  std::vector<double> sinr(k_tot);
  for (int u = 0; u < k_tot; ++u) {
    const int j = config.group_of_user(u);
    const double beta = betas[u];
    const double gamma = gammas[u];
    switch (scheme) {
      case SchemeId::MrtUndp:
      case SchemeId::MrtMudp:
        sinr[u] = n * gamma * dl_powers[u] / (1.0 + beta * total_power);
        break;
      case SchemeId::ZfUndp:
        sinr[u] = (n - k_tot) * gamma * dl_powers[u] /
                  (1.0 + (beta - gamma) * total_power);
        break;
      case SchemeId::ZfMudp: {
        const int off = config.user_offset(j);
        double group_power = 0.0;
        for (int k = 0; k < config.group_sizes[j]; ++k) {
          group_power += dl_powers[off + k];
        }
        const double nu_j = static_cast<double>(k_tot - config.group_sizes[j]);
        sinr[u] = (n - nu_j) * gamma * dl_powers[u] /
                  (1.0 + gamma * group_power + (beta - gamma) * total_power);
        break;
      }
      case SchemeId::MrtMucp:
        sinr[u] = n * gamma * dl_powers[j] / (1.0 + beta * total_power);
        break;
      case SchemeId::ZfMucp:
        sinr[u] = (n - g) * gamma * dl_powers[j] /
                  (1.0 + (beta - gamma) * total_power);
        break;
    }
  }
  return sinr;
}

std::vector<double> se_from_sinr(const std::vector<double>& sinr, int tau_p,
                                 int coherence_symbols) {
  if (tau_p <= 0 || tau_p >= coherence_symbols) {
    throw InvalidArgument("pilot length must satisfy 0 < tau_p < T");
  }
  const double prelog =
      1.0 - static_cast<double>(tau_p) / static_cast<double>(coherence_symbols);
  std::vector<double> se(sinr.size());
  for (std::size_t u = 0; u < sinr.size(); ++u) {
    se[u] = prelog * std::log2(1.0 + sinr[u]);
  }
  return se;
}

SePoint evaluate_se(SchemeId scheme, const SystemConfig& config,
                    const std::vector<double>& betas,
                    const std::vector<double>& gammas,
                    const std::vector<double>& dl_powers, int tau_p) {
  SePoint point;
  point.scheme = scheme;
  point.tau_p = tau_p;
  point.per_user_sinr = sinr_closed_form(scheme, config, betas, gammas, dl_powers);
  point.per_user_se = se_from_sinr(point.per_user_sinr, tau_p, config.coherence_symbols);
  point.prelog = 1.0 - static_cast<double>(tau_p) /
                           static_cast<double>(config.coherence_symbols);
  return point;
}

}  // namespace mgmcast
