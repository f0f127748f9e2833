#pragma once

#include <vector>

#include "mgmcast/scheme.hpp"
#include "mgmcast/system_config.hpp"

namespace mgmcast {

/// Scheme-specific per-group intermediates of the max-min solutions; vectors
/// are empty when a quantity does not apply to the scheme.
struct GroupAux {
  std::vector<double> delta;           // Delta_i
  std::vector<double> upsilon;         // Upsilon_i (co-pilot schemes)
  std::vector<double> interf_energy;   // E_i (zf-mucp)
  std::vector<double> dl_group_power;  // P_i^dl
  std::vector<int> nu;                 // nu_i = K_tot - K_i (zf-mudp)
  std::vector<int> cap_users;          // per group, a user index attaining Upsilon_i
};

/// Max-min fair solution for one scheme at one pilot length: every user
/// attains the common SINR Gamma, the downlink budget is spent exactly, and
/// uplink powers respect their caps.
struct MmfSolution {
  SchemeId scheme;
  int tau_p = 0;
  std::vector<double> gamma_star;  // per user, at the optimal uplink powers
  std::vector<double> ul_powers;   // per user
  std::vector<double> dl_powers;   // per user (dp) or per group (cp)
  double common_sinr = 0.0;        // Gamma
  double min_se = 0.0;             // (1 - tau_p/T) log2(1 + Gamma)
  GroupAux aux;
};

inline constexpr double kDefaultBisectionTol = 1e-10;

MmfSolution solve_mrt_undp(const SystemConfig& config,
                           const std::vector<double>& betas, int tau_p);
MmfSolution solve_zf_undp(const SystemConfig& config,
                          const std::vector<double>& betas, int tau_p);
MmfSolution solve_mrt_mudp(const SystemConfig& config,
                           const std::vector<double>& betas, int tau_p);
/// Root of P = sum_i Gamma Delta_i / (N - nu_i - Gamma K_i) by safeguarded
/// bisection; `tol` bounds the relative budget residual.
MmfSolution solve_zf_mudp(const SystemConfig& config,
                          const std::vector<double>& betas, int tau_p,
                          double tol = kDefaultBisectionTol);
MmfSolution solve_mrt_mucp(const SystemConfig& config,
                           const std::vector<double>& betas, int tau_p);
MmfSolution solve_zf_mucp(const SystemConfig& config,
                          const std::vector<double>& betas, int tau_p);

/// Dispatch to the scheme's solver at a fixed pilot length.
MmfSolution solve_mmf(SchemeId scheme, const SystemConfig& config,
                      const std::vector<double>& betas, int tau_p,
                      double tol = kDefaultBisectionTol);

/// Exhaustive search over the scheme's admissible pilot lengths
/// ({K_tot..T-1} dedicated, {G..T-1} co-pilot), maximizing the minimum SE;
/// ties break toward the smaller pilot length.
MmfSolution optimize_pilot_length(SchemeId scheme, const SystemConfig& config,
                                  const std::vector<double>& betas);

/// The budget consumed at common SINR gamma for zf-mudp (the right-hand side
/// of the fixed-point equation); exposed for its monotonicity checks.
double zf_mudp_budget(const SystemConfig& config,
                      const std::vector<double>& deltas, double gamma);

}  // namespace mgmcast
