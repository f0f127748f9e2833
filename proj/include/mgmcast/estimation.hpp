#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mgmcast/channel.hpp"
#include "mgmcast/system_config.hpp"

namespace mgmcast {

/// MMSE estimates under dedicated pilots: one orthogonal pilot per user.
/// Column u of `g_hat` is the estimate of user u's channel; entries are
/// CN(0, gamma_u), the error g_hat - g is CN(0, beta_u - gamma_u).
struct DpEstimate {
  Eigen::MatrixXcd g_hat;     // N x K_tot, stacked in flattened user order
  std::vector<double> gamma;  // per user
  int tau_p = 0;
};

/// MMSE estimates under co-pilot assignment: one shared pilot per group.
/// Per-user estimates within a group are exact scalar multiples of the
/// composite group estimate (both are scalings of the same pilot
/// observation).
struct CpEstimate {
  Eigen::MatrixXcd g_hat_user;      // N x K_tot
  std::vector<double> gamma_user;   // per user
  Eigen::MatrixXcd g_hat_group;     // N x G
  std::vector<double> gamma_group;  // per group
  int tau_p = 0;
};

/// Estimate variance gamma = tau p beta^2 / (1 + tau p beta) for a
/// dedicated pilot of length tau at power p.
double gamma_dedicated(int tau_p, double ul_power, double beta);

/// Per-user estimate variance under a shared group pilot:
/// gamma_k = tau p_k beta_k^2 / (1 + tau sum_m p_m beta_m).
double gamma_copilot(int tau_p, const std::vector<double>& ul_powers,
                     const std::vector<double>& betas, int member);

/// Composite-channel estimate variance:
/// gamma_j = (tau sum_k p_k beta_k)^2 / (1 + tau sum_k p_k beta_k).
double gamma_composite(int tau_p, const std::vector<double>& ul_powers,
                       const std::vector<double>& betas);

/// Runs dedicated-pilot MMSE estimation on one realization. Fresh noise per
/// user, deterministic in seed. Requires tau_p >= K_tot.
DpEstimate estimate_dp(const ChannelRealization& realization,
                       const SystemConfig& config,
                       const std::vector<double>& ul_powers, int tau_p,
                       std::uint64_t seed);

/// Runs co-pilot MMSE estimation: users in a group share one pilot, so they
/// share one noise vector. Requires tau_p >= G.
CpEstimate estimate_cp(const ChannelRealization& realization,
                       const SystemConfig& config,
                       const std::vector<double>& ul_powers, int tau_p,
                       std::uint64_t seed);

}  // namespace mgmcast
