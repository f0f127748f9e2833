#include "mgmcast/mmf_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mgmcast/closed_form_se.hpp"
#include "mgmcast/errors.hpp"
#include "mgmcast/estimation.hpp"

namespace mgmcast {

namespace {

void check_inputs(const SystemConfig& config, const std::vector<double>& betas,
                  int tau_p, int tau_min) {
  config.validate();
  if (static_cast<int>(betas.size()) != config.total_users()) {
    throw InvalidArgument("betas must have one entry per user");
  }
  for (double b : betas) {
    if (b <= 0.0) throw InvalidArgument("large-scale fading must be > 0");
  }
  for (double cap : config.ul_power_caps) {
    if (cap <= 0.0) {
      throw InfeasibleError(
          "a user with zero uplink power cap can never be estimated; the "
          "max-min SINR is degenerate");
    }
  }
  if (tau_p < tau_min || tau_p >= config.coherence_symbols) {
    throw InfeasibleError("pilot length outside the admissible grid");
  }
}

double min_se_at(double gamma, int tau_p, int t) {
  const double prelog =
      1.0 - static_cast<double>(tau_p) / static_cast<double>(t);
  return prelog * std::log2(1.0 + gamma);
}

/// gamma* per user when every user trains at its cap (optimal for all
/// dedicated-pilot schemes: the SINR is monotone in the pilot power).
std::vector<double> gamma_at_caps_dp(const SystemConfig& config,
                                     const std::vector<double>& betas,
                                     int tau_p) {
  std::vector<double> gamma(config.total_users());
  for (int u = 0; u < config.total_users(); ++u) {
    gamma[u] = gamma_dedicated(tau_p, config.ul_power_caps[u], betas[u]);
  }
  return gamma;
}

/// Co-pilot uplink policy: within each group the cap-normalized quantity
/// p beta^2 / (1 + beta P) is equalized at Upsilon_i, its minimum over the
/// group's caps, so the binding user transmits exactly at its cap.
struct CpUplink {
  std::vector<double> upsilon;     // per group
  std::vector<int> cap_users;     // per group, flattened index of a binding user
  std::vector<double> ul_powers;  // per user
  std::vector<double> energy;     // E_i = sum_m p_m beta_m per group
  std::vector<double> gamma_user;  // per user, at the optimal powers
};

CpUplink cp_uplink_policy(const SystemConfig& config,
                          const std::vector<double>& betas, int tau_p) {
  const int g = config.n_groups();
  const double p_budget = config.dl_power_budget;
  CpUplink out;
  out.upsilon.resize(g);
  out.cap_users.resize(g);
  out.ul_powers.resize(config.total_users());
  out.energy.resize(g);
  out.gamma_user.resize(config.total_users());

  for (int j = 0; j < g; ++j) {
    const int off = config.user_offset(j);
    const int kj = config.group_sizes[j];
    double ups = std::numeric_limits<double>::infinity();
    int binding = off;
    for (int k = 0; k < kj; ++k) {
      const int u = off + k;
      const double b = betas[u];
      const double value =
          config.ul_power_caps[u] * b * b / (1.0 + b * p_budget);
      if (value < ups) {
        ups = value;
        binding = u;
      }
    }
    out.upsilon[j] = ups;
    out.cap_users[j] = binding;

    double energy = 0.0;
    for (int k = 0; k < kj; ++k) {
      const int u = off + k;
      const double b = betas[u];
      // min() guards the binding user against a one-ulp round trip above
      // its cap.
      out.ul_powers[u] =
          std::min(ups * (1.0 + b * p_budget) / (b * b), config.ul_power_caps[u]);
      energy += out.ul_powers[u] * b;
    }
    out.energy[j] = energy;

    const double tau = static_cast<double>(tau_p);
    for (int k = 0; k < kj; ++k) {
      const int u = off + k;
      out.gamma_user[u] = tau * out.ul_powers[u] * betas[u] * betas[u] /
                          (1.0 + tau * energy);
    }
  }
  return out;
}

}  // namespace

MmfSolution solve_mrt_undp(const SystemConfig& config,
                           const std::vector<double>& betas, int tau_p) {
  check_inputs(config, betas, tau_p, config.total_users());
  const int k_tot = config.total_users();
  const double n = static_cast<double>(config.n_antennas);
  const double p = config.dl_power_budget;

  MmfSolution sol;
  sol.scheme = SchemeId::MrtUndp;
  sol.tau_p = tau_p;
  sol.ul_powers = config.ul_power_caps;
  sol.gamma_star = gamma_at_caps_dp(config, betas, tau_p);

  double sum = 0.0;
  for (int u = 0; u < k_tot; ++u) {
    sum += (1.0 + betas[u] * p) / sol.gamma_star[u];
  }
  sol.common_sinr = n * p / sum;
  sol.dl_powers.resize(k_tot);
  for (int u = 0; u < k_tot; ++u) {
    sol.dl_powers[u] =
        sol.common_sinr * (1.0 + betas[u] * p) / (sol.gamma_star[u] * n);
  }
  sol.min_se = min_se_at(sol.common_sinr, tau_p, config.coherence_symbols);
  return sol;
}

MmfSolution solve_zf_undp(const SystemConfig& config,
                          const std::vector<double>& betas, int tau_p) {
  check_inputs(config, betas, tau_p, config.total_users());
  const int k_tot = config.total_users();
  if (config.n_antennas <= k_tot) throw InfeasibleError("zf-undp needs N > K_tot");
  const double dof = static_cast<double>(config.n_antennas - k_tot);
  const double p = config.dl_power_budget;

  MmfSolution sol;
  sol.scheme = SchemeId::ZfUndp;
  sol.tau_p = tau_p;
  sol.ul_powers = config.ul_power_caps;
  sol.gamma_star = gamma_at_caps_dp(config, betas, tau_p);

  double sum = 0.0;
  for (int u = 0; u < k_tot; ++u) {
    sum += (1.0 + (betas[u] - sol.gamma_star[u]) * p) / sol.gamma_star[u];
  }
  sol.common_sinr = dof * p / sum;
  sol.dl_powers.resize(k_tot);
  for (int u = 0; u < k_tot; ++u) {
    sol.dl_powers[u] = sol.common_sinr *
                       (1.0 + (betas[u] - sol.gamma_star[u]) * p) /
                       (sol.gamma_star[u] * dof);
  }
  sol.min_se = min_se_at(sol.common_sinr, tau_p, config.coherence_symbols);
  return sol;
}

MmfSolution solve_mrt_mudp(const SystemConfig& config,
                           const std::vector<double>& betas, int tau_p) {
  // Same transmit signal as mrt-undp when the group shares one message, so
  // the optimal policy coincides.
  MmfSolution sol = solve_mrt_undp(config, betas, tau_p);
  sol.scheme = SchemeId::MrtMudp;
  return sol;
}

double zf_mudp_budget(const SystemConfig& config,
                      const std::vector<double>& deltas, double gamma) {
  const int k_tot = config.total_users();
  double total = 0.0;
  for (int j = 0; j < config.n_groups(); ++j) {
    const double dof =
        static_cast<double>(config.n_antennas - (k_tot - config.group_sizes[j]));
    const double denom = dof - gamma * static_cast<double>(config.group_sizes[j]);
    if (denom <= 0.0) return std::numeric_limits<double>::infinity();
    total += gamma * deltas[j] / denom;
  }
  return total;
}

MmfSolution solve_zf_mudp(const SystemConfig& config,
                          const std::vector<double>& betas, int tau_p,
                          double tol) {
  check_inputs(config, betas, tau_p, config.total_users());
  const int k_tot = config.total_users();
  const int g = config.n_groups();
  const double p = config.dl_power_budget;

  MmfSolution sol;
  sol.scheme = SchemeId::ZfMudp;
  sol.tau_p = tau_p;
  sol.ul_powers = config.ul_power_caps;
  sol.gamma_star = gamma_at_caps_dp(config, betas, tau_p);

  sol.aux.nu.resize(g);
  sol.aux.delta.resize(g);
  double upper = std::numeric_limits<double>::infinity();
  for (int j = 0; j < g; ++j) {
    const int nu_j = k_tot - config.group_sizes[j];
    if (config.n_antennas <= nu_j) {
      throw InfeasibleError("zf-mudp needs N > K_tot - K_j for every group");
    }
    sol.aux.nu[j] = nu_j;
    const int off = config.user_offset(j);
    double delta = 0.0;
    for (int k = 0; k < config.group_sizes[j]; ++k) {
      const int u = off + k;
      delta += 1.0 / sol.gamma_star[u] + p * betas[u] / sol.gamma_star[u] - p;
    }
    sol.aux.delta[j] = delta;
    upper = std::min(upper, static_cast<double>(config.n_antennas - nu_j) /
                                static_cast<double>(config.group_sizes[j]));
  }

  double gamma = 0.0;
  if (p > 0.0) {
    // The budget is continuous and strictly increasing in gamma, 0 at 0 and
    // unbounded at `upper`, so bisection brackets the root; a few Newton
    // steps then polish the residual to the requested tolerance.
    double lo = 0.0;
    double hi = upper;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double used = zf_mudp_budget(config, sol.aux.delta, mid);
      if (used < p) {
        lo = mid;
      } else {
        hi = mid;
      }
      if (std::abs(used - p) <= tol * p) break;
      if (hi - lo <= 1e-16 * upper) break;
    }
    gamma = 0.5 * (lo + hi);
    for (int it = 0; it < 20; ++it) {
      const double used = zf_mudp_budget(config, sol.aux.delta, gamma);
      if (std::abs(used - p) <= tol * p) break;
      double slope = 0.0;
      for (int j = 0; j < g; ++j) {
        const double dof = static_cast<double>(config.n_antennas - sol.aux.nu[j]);
        const double denom = dof - gamma * static_cast<double>(config.group_sizes[j]);
        slope += sol.aux.delta[j] * dof / (denom * denom);
      }
      double next = gamma + (p - used) / slope;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (zf_mudp_budget(config, sol.aux.delta, next) < p) {
        lo = next;
      } else {
        hi = next;
      }
      gamma = next;
    }
    const double residual = std::abs(zf_mudp_budget(config, sol.aux.delta, gamma) - p);
    if (residual > tol * p) {
      throw Error("zf-mudp line search failed to reach the residual tolerance");
    }
  }

  sol.common_sinr = gamma;
  sol.dl_powers.resize(k_tot);
  sol.aux.dl_group_power.resize(g);
  for (int j = 0; j < g; ++j) {
    const double dof = static_cast<double>(config.n_antennas - sol.aux.nu[j]);
    const double group_power =
        p > 0.0 ? gamma * sol.aux.delta[j] /
                      (dof - gamma * static_cast<double>(config.group_sizes[j]))
                : 0.0;
    sol.aux.dl_group_power[j] = group_power;
    const int off = config.user_offset(j);
    for (int k = 0; k < config.group_sizes[j]; ++k) {
      const int u = off + k;
      sol.dl_powers[u] =
          gamma / dof *
          (1.0 / sol.gamma_star[u] + group_power +
           p * betas[u] / sol.gamma_star[u] - p);
    }
  }
  sol.min_se = min_se_at(sol.common_sinr, tau_p, config.coherence_symbols);
  return sol;
}

MmfSolution solve_mrt_mucp(const SystemConfig& config,
                           const std::vector<double>& betas, int tau_p) {
  check_inputs(config, betas, tau_p, config.n_groups());
  const int g = config.n_groups();
  const double n = static_cast<double>(config.n_antennas);
  const double p = config.dl_power_budget;
  const double tau = static_cast<double>(tau_p);

  CpUplink uplink = cp_uplink_policy(config, betas, tau_p);

  MmfSolution sol;
  sol.scheme = SchemeId::MrtMucp;
  sol.tau_p = tau_p;
  sol.ul_powers = std::move(uplink.ul_powers);
  sol.gamma_star = std::move(uplink.gamma_user);
  sol.aux.upsilon = uplink.upsilon;
  sol.aux.cap_users = uplink.cap_users;
  sol.aux.interf_energy = uplink.energy;

  double sum = 0.0;
  for (int j = 0; j < g; ++j) {
    sum += (1.0 + tau * uplink.energy[j]) / (tau * uplink.upsilon[j]);
  }
  sol.common_sinr = n * p / sum;
  sol.dl_powers.resize(g);
  for (int j = 0; j < g; ++j) {
    sol.dl_powers[j] = sol.common_sinr * (1.0 + tau * uplink.energy[j]) /
                       (tau * n * uplink.upsilon[j]);
  }
  sol.aux.dl_group_power = sol.dl_powers;
  sol.min_se = min_se_at(sol.common_sinr, tau_p, config.coherence_symbols);
  return sol;
}

MmfSolution solve_zf_mucp(const SystemConfig& config,
                          const std::vector<double>& betas, int tau_p) {
  check_inputs(config, betas, tau_p, config.n_groups());
  const int g = config.n_groups();
  if (config.n_antennas <= g) throw InfeasibleError("zf-mucp needs N > G");
  const double dof = static_cast<double>(config.n_antennas - g);
  const double p = config.dl_power_budget;
  const double tau = static_cast<double>(tau_p);

  CpUplink uplink = cp_uplink_policy(config, betas, tau_p);

  MmfSolution sol;
  sol.scheme = SchemeId::ZfMucp;
  sol.tau_p = tau_p;
  sol.ul_powers = std::move(uplink.ul_powers);
  sol.gamma_star = std::move(uplink.gamma_user);
  sol.aux.upsilon = uplink.upsilon;
  sol.aux.cap_users = uplink.cap_users;
  sol.aux.interf_energy = uplink.energy;

  sol.aux.delta.resize(g);
  double inv_sum = 0.0;
  for (int j = 0; j < g; ++j) {
    sol.aux.delta[j] = tau * uplink.upsilon[j] /
                       (1.0 + tau * (uplink.energy[j] - p * uplink.upsilon[j]));
    inv_sum += 1.0 / sol.aux.delta[j];
  }
  sol.common_sinr = p * dof / inv_sum;
  sol.dl_powers.resize(g);
  for (int j = 0; j < g; ++j) {
    sol.dl_powers[j] = sol.common_sinr / (dof * sol.aux.delta[j]);
  }
  sol.aux.dl_group_power = sol.dl_powers;
  sol.min_se = min_se_at(sol.common_sinr, tau_p, config.coherence_symbols);
  return sol;
}

MmfSolution solve_mmf(SchemeId scheme, const SystemConfig& config,
                      const std::vector<double>& betas, int tau_p,
                      double tol) {
  switch (scheme) {
    case SchemeId::MrtUndp: return solve_mrt_undp(config, betas, tau_p);
    case SchemeId::ZfUndp: return solve_zf_undp(config, betas, tau_p);
    case SchemeId::MrtMudp: return solve_mrt_mudp(config, betas, tau_p);
    case SchemeId::ZfMudp: return solve_zf_mudp(config, betas, tau_p, tol);
    case SchemeId::MrtMucp: return solve_mrt_mucp(config, betas, tau_p);
    case SchemeId::ZfMucp: return solve_zf_mucp(config, betas, tau_p);
  }
  throw InvalidArgument("unknown scheme");
}

MmfSolution optimize_pilot_length(SchemeId scheme, const SystemConfig& config,
                                  const std::vector<double>& betas) {
  const Feasibility feas = scheme_feasible(scheme, config);
  if (!feas) throw InfeasibleError(feas.reason);

  const int tau_min =
      uses_dedicated_pilots(scheme) ? config.total_users() : config.n_groups();
  MmfSolution best;
  bool have_best = false;
  for (int tau = tau_min; tau < config.coherence_symbols; ++tau) {
    MmfSolution candidate = solve_mmf(scheme, config, betas, tau);
    if (!have_best || candidate.min_se > best.min_se) {
      best = std::move(candidate);
      have_best = true;
    }
  }
  if (!have_best) throw InfeasibleError("no admissible pilot length");
  return best;
}

}  // namespace mgmcast
