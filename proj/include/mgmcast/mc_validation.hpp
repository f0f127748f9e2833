#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mgmcast/channel.hpp"
#include "mgmcast/mmf_solvers.hpp"
#include "mgmcast/scheme.hpp"
#include "mgmcast/system_config.hpp"

namespace mgmcast {

struct TermStat {
  double value = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo estimate of one user's effective SINR, decomposed into the
/// terms of the hardening bound: the numerator is the squared mean of the
/// effective channel coefficient, the denominator collects its fluctuation
/// plus one interference power per data stream.
///
/// MRT schemes pair the true channel with each stream's transmit vector;
/// transmissions to co-members of the user's own group carry the same
/// message but are uncorrelated with the mean, so they land in the
/// variance term. ZF schemes use the estimate/error split instead: the
/// estimate side of every other stream is nulled exactly, leaving the
/// estimation-error products as the interference terms.
struct UatfEstimate {
  SchemeId scheme;
  int user = 0;
  TermStat signal_mean;  // real part of the mean effective coefficient
  double signal_term = 0.0;  // signal_mean.value squared
  TermStat variance_term;
  std::vector<TermStat> interference_terms;  // one per stream
  // zf-mudp only: mean of the within-group cross products between the
  // user's own projected column and its co-members'; zero in expectation.
  std::optional<TermStat> intra_group_cross;
  double sinr_mc = 0.0;
  double sinr_std_error = 0.0;
  int n_samples = 0;
};

/// Closed-form values of the same terms, for term-level comparison.
struct UatfClosedTerms {
  double signal_mean = 0.0;
  double variance = 0.0;
  std::vector<double> interference;
};

/// One estimate per user over n_samples independent channel/noise draws.
/// Deterministic in seed; sample m depends only on (seed, m).
std::vector<UatfEstimate> estimate_uatf_sinr(
    SchemeId scheme, const SystemConfig& config, const FadingProfile& profile,
    const std::vector<double>& ul_powers, const std::vector<double>& dl_powers,
    int tau_p, int n_samples, std::uint64_t seed);

UatfClosedTerms closed_uatf_terms(SchemeId scheme, const SystemConfig& config,
                                  int user, const std::vector<double>& betas,
                                  const std::vector<double>& gammas,
                                  const std::vector<double>& dl_powers);

/// Wires the Monte Carlo estimator against the closed-form SINR at a
/// max-min solution.
struct BoundComparison {
  std::vector<UatfEstimate> estimates;
  std::vector<double> closed_sinr;
  std::vector<double> rel_deviation;
  std::vector<bool> within_band;  // |closed - mc| <= 3 standard errors
  int n_flagged = 0;
  double max_rel_deviation = 0.0;
};

BoundComparison compare_bound(SchemeId scheme, const SystemConfig& config,
                              const FadingProfile& profile,
                              const MmfSolution& solution, int n_samples,
                              std::uint64_t seed);

}  // namespace mgmcast
