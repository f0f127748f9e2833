#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mgmcast/estimation.hpp"
#include "mgmcast/scheme.hpp"
#include "mgmcast/system_config.hpp"

namespace mgmcast {

/// Precoder columns for one scheme: one column per user (unicast) or per
/// group (multicast), each statistically normalized so that E[||w||^2] over
/// channel and estimation noise equals its allocated power.
struct PrecodingMatrix {
  SchemeId scheme;
  Eigen::MatrixXcd columns;  // N x K_tot (unicast) or N x G (multicast)
  std::vector<double> allocated_powers;
};

// Unicast, dedicated pilots. dl_powers has one entry per user.
PrecodingMatrix mrt_undp(const DpEstimate& est, const SystemConfig& config,
                         const std::vector<double>& dl_powers);
PrecodingMatrix zf_undp(const DpEstimate& est, const SystemConfig& config,
                        const std::vector<double>& dl_powers);

// Multicast, dedicated pilots. dl_powers still has one entry per user; each
// group column combines the per-user weights.
PrecodingMatrix mrt_mudp(const DpEstimate& est, const SystemConfig& config,
                         const std::vector<double>& dl_powers);
PrecodingMatrix zf_mudp(const DpEstimate& est, const SystemConfig& config,
                        const std::vector<double>& dl_powers);

// Multicast, co-pilot. dl_group_powers has one entry per group.
PrecodingMatrix mrt_mucp(const CpEstimate& est, const SystemConfig& config,
                         const std::vector<double>& dl_group_powers);
PrecodingMatrix zf_mucp(const CpEstimate& est, const SystemConfig& config,
                        const std::vector<double>& dl_group_powers);

/// For each group j, the within-group estimate columns projected onto the
/// orthogonal complement of the other groups' estimates (the ZF-mudp
/// projection, before weighting). Entry j is N x K_j.
std::vector<Eigen::MatrixXcd> zf_mudp_projections(const DpEstimate& est,
                                                  const SystemConfig& config);

/// Per-stream transmit vectors: column j is the vector multiplying symbol
/// s_j. For multicast precoders this is column j itself; for unicast it is
/// the sum of group j's user columns.
Eigen::MatrixXcd stream_vectors(const PrecodingMatrix& precoder,
                                const SystemConfig& config);

}  // namespace mgmcast
