#include "mgmcast/estimation.hpp"

#include <cmath>

#include "mgmcast/errors.hpp"
#include "mgmcast/rng.hpp"

namespace mgmcast {

namespace {

void check_powers(const SystemConfig& config,
                  const std::vector<double>& ul_powers) {
  if (static_cast<int>(ul_powers.size()) != config.total_users()) {
    throw InvalidArgument("ul_powers must have one entry per user");
  }
  for (int u = 0; u < config.total_users(); ++u) {
    if (ul_powers[u] < 0.0) throw InvalidArgument("uplink powers must be >= 0");
  }
}

}  // namespace

double gamma_dedicated(int tau_p, double ul_power, double beta) {
  const double tp = static_cast<double>(tau_p) * ul_power;
  return tp * beta * beta / (1.0 + tp * beta);
}

double gamma_copilot(int tau_p, const std::vector<double>& ul_powers,
                     const std::vector<double>& betas, int member) {
  double sum = 0.0;
  for (std::size_t m = 0; m < ul_powers.size(); ++m) {
    sum += ul_powers[m] * betas[m];
  }
  const double tau = static_cast<double>(tau_p);
  return tau * ul_powers[member] * betas[member] * betas[member] /
         (1.0 + tau * sum);
}

double gamma_composite(int tau_p, const std::vector<double>& ul_powers,
                       const std::vector<double>& betas) {
  double sum = 0.0;
  for (std::size_t m = 0; m < ul_powers.size(); ++m) {
    sum += ul_powers[m] * betas[m];
  }
  const double ts = static_cast<double>(tau_p) * sum;
  return ts * ts / (1.0 + ts);
}

DpEstimate estimate_dp(const ChannelRealization& realization,
                       const SystemConfig& config,
                       const std::vector<double>& ul_powers, int tau_p,
                       std::uint64_t seed) {
  check_powers(config, ul_powers);
  const int k_tot = config.total_users();
  if (tau_p < k_tot) {
    throw InfeasibleError("dedicated pilots need tau_p >= K_tot");
  }
  const int n = realization.n_antennas();
  const double tau = static_cast<double>(tau_p);

  DpEstimate est;
  est.tau_p = tau_p;
  est.g_hat.resize(n, k_tot);
  est.gamma.resize(k_tot);

  RandomStream noise(seed);
  for (int u = 0; u < k_tot; ++u) {
    const double beta = realization.profile.betas[u];
    const double p = ul_powers[u];
    const double root_tp = std::sqrt(tau * p);
    const double coeff = root_tp * beta / (1.0 + tau * p * beta);
    est.gamma[u] = gamma_dedicated(tau_p, p, beta);
    for (int row = 0; row < n; ++row) {
      const std::complex<double> obs =
          root_tp * realization.channels(row, u) + noise.cgauss(1.0);
      est.g_hat(row, u) = coeff * obs;
    }
  }
  return est;
}

CpEstimate estimate_cp(const ChannelRealization& realization,
                       const SystemConfig& config,
                       const std::vector<double>& ul_powers, int tau_p,
                       std::uint64_t seed) {
  check_powers(config, ul_powers);
  const int g = config.n_groups();
  if (tau_p < g) {
    throw InfeasibleError("co-pilot assignment needs tau_p >= G");
  }
  const int n = realization.n_antennas();
  const int k_tot = config.total_users();
  const double tau = static_cast<double>(tau_p);

  CpEstimate est;
  est.tau_p = tau_p;
  est.g_hat_user.resize(n, k_tot);
  est.gamma_user.resize(k_tot);
  est.g_hat_group.resize(n, g);
  est.gamma_group.resize(g);

  RandomStream noise(seed);
  Eigen::VectorXcd observation(n);
  for (int j = 0; j < g; ++j) {
    const int off = config.user_offset(j);
    const int kj = config.group_sizes[j];

    // Group members share one pilot: one observation, one noise vector.
    observation.setZero();
    double power_sum = 0.0;  // sum_m p_m beta_m
    for (int k = 0; k < kj; ++k) {
      const int u = off + k;
      observation += std::sqrt(tau * ul_powers[u]) * realization.channels.col(u);
      power_sum += ul_powers[u] * realization.profile.betas[u];
    }
    for (int row = 0; row < n; ++row) observation(row) += noise.cgauss(1.0);

    const double denom = 1.0 + tau * power_sum;
    est.g_hat_group.col(j) = (tau * power_sum / denom) * observation;
    est.gamma_group[j] = tau * power_sum * tau * power_sum / denom;

    for (int k = 0; k < kj; ++k) {
      const int u = off + k;
      const double beta = realization.profile.betas[u];
      const double coeff = std::sqrt(tau * ul_powers[u]) * beta / denom;
      est.g_hat_user.col(u) = coeff * observation;
      est.gamma_user[u] = tau * ul_powers[u] * beta * beta / denom;
    }
  }
  return est;
}

}  // namespace mgmcast
