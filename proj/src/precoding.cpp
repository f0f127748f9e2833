#include "mgmcast/precoding.hpp"

#include <cmath>

#include "mgmcast/errors.hpp"
#include "mgmcast/linalg.hpp"

namespace mgmcast {

namespace {

void check_dim(const std::vector<double>& powers, int expected,
               const char* what) {
  if (static_cast<int>(powers.size()) != expected) {
    throw InvalidArgument(std::string("downlink power vector must have one "
                                      "entry per ") +
                          what);
  }
  for (double p : powers) {
    if (p < 0.0) throw InvalidArgument("downlink powers must be >= 0");
  }
}

/// sqrt(p / (coeff * gamma)) with the zero-power and zero-gamma edge cases.
double mrt_weight(double p, double coeff, double gamma) {
  if (p == 0.0) return 0.0;
  if (gamma <= 0.0) {
    throw InvalidArgument(
        "cannot normalize a precoding column: estimate variance is zero but "
        "allocated power is positive");
  }
  return std::sqrt(p / (coeff * gamma));
}

}  // namespace

PrecodingMatrix mrt_undp(const DpEstimate& est, const SystemConfig& config,
                         const std::vector<double>& dl_powers) {
  const int k_tot = config.total_users();
  check_dim(dl_powers, k_tot, "user");
  const double n = static_cast<double>(est.g_hat.rows());

  PrecodingMatrix pm;
  pm.scheme = SchemeId::MrtUndp;
  pm.allocated_powers = dl_powers;
  pm.columns.resize(est.g_hat.rows(), k_tot);
  for (int u = 0; u < k_tot; ++u) {
    pm.columns.col(u) =
        mrt_weight(dl_powers[u], n, est.gamma[u]) * est.g_hat.col(u);
  }
  return pm;
}

PrecodingMatrix zf_undp(const DpEstimate& est, const SystemConfig& config,
                        const std::vector<double>& dl_powers) {
  const int k_tot = config.total_users();
  check_dim(dl_powers, k_tot, "user");
  const int n = static_cast<int>(est.g_hat.rows());
  if (n <= k_tot) throw InfeasibleError("zf-undp needs N > K_tot");

  const Eigen::MatrixXcd basis = zf_basis(est.g_hat);
  PrecodingMatrix pm;
  pm.scheme = SchemeId::ZfUndp;
  pm.allocated_powers = dl_powers;
  pm.columns.resize(n, k_tot);
  for (int u = 0; u < k_tot; ++u) {
    const double scale =
        std::sqrt(dl_powers[u] * est.gamma[u] * static_cast<double>(n - k_tot));
    pm.columns.col(u) = scale * basis.col(u);
  }
  return pm;
}

PrecodingMatrix mrt_mudp(const DpEstimate& est, const SystemConfig& config,
                         const std::vector<double>& dl_powers) {
  // Sum of the unicast MRT columns within each group; the transmitted
  // signal is identical to mrt_undp when the group shares one message.
  PrecodingMatrix unicast = mrt_undp(est, config, dl_powers);
  const int g = config.n_groups();

  PrecodingMatrix pm;
  pm.scheme = SchemeId::MrtMudp;
  pm.allocated_powers = dl_powers;
  pm.columns = Eigen::MatrixXcd::Zero(unicast.columns.rows(), g);
  for (int j = 0; j < g; ++j) {
    const int off = config.user_offset(j);
    for (int k = 0; k < config.group_sizes[j]; ++k) {
      pm.columns.col(j) += unicast.columns.col(off + k);
    }
  }
  return pm;
}

std::vector<Eigen::MatrixXcd> zf_mudp_projections(const DpEstimate& est,
                                                  const SystemConfig& config) {
  const int g = config.n_groups();
  const int k_tot = config.total_users();
  const int n = static_cast<int>(est.g_hat.rows());

  std::vector<Eigen::MatrixXcd> projected(g);
  for (int j = 0; j < g; ++j) {
    const int off = config.user_offset(j);
    const int kj = config.group_sizes[j];
    const int nu_j = k_tot - kj;
    if (n <= nu_j) throw InfeasibleError("zf-mudp needs N > K_tot - K_j");

    if (nu_j == 0) {
      projected[j] = est.g_hat.middleCols(off, kj);
      continue;
    }
    Eigen::MatrixXcd others(n, nu_j);
    others.leftCols(off) = est.g_hat.leftCols(off);
    others.rightCols(nu_j - off) = est.g_hat.rightCols(k_tot - off - kj);
    const Eigen::MatrixXcd q = orthonormal_span(others);
    projected[j] = project_out(q, est.g_hat.middleCols(off, kj));
  }
  return projected;
}

PrecodingMatrix zf_mudp(const DpEstimate& est, const SystemConfig& config,
                        const std::vector<double>& dl_powers) {
  const int k_tot = config.total_users();
  check_dim(dl_powers, k_tot, "user");
  const int g = config.n_groups();
  const int n = static_cast<int>(est.g_hat.rows());

  const std::vector<Eigen::MatrixXcd> projected =
      zf_mudp_projections(est, config);

  PrecodingMatrix pm;
  pm.scheme = SchemeId::ZfMudp;
  pm.allocated_powers = dl_powers;
  pm.columns = Eigen::MatrixXcd::Zero(n, g);
  for (int j = 0; j < g; ++j) {
    const int off = config.user_offset(j);
    const int kj = config.group_sizes[j];
    const double dof = static_cast<double>(n - (k_tot - kj));
    for (int k = 0; k < kj; ++k) {
      const int u = off + k;
      pm.columns.col(j) +=
          mrt_weight(dl_powers[u], dof, est.gamma[u]) * projected[j].col(k);
    }
  }
  return pm;
}

PrecodingMatrix mrt_mucp(const CpEstimate& est, const SystemConfig& config,
                         const std::vector<double>& dl_group_powers) {
  const int g = config.n_groups();
  check_dim(dl_group_powers, g, "group");
  const double n = static_cast<double>(est.g_hat_group.rows());

  PrecodingMatrix pm;
  pm.scheme = SchemeId::MrtMucp;
  pm.allocated_powers = dl_group_powers;
  pm.columns.resize(est.g_hat_group.rows(), g);
  for (int j = 0; j < g; ++j) {
    pm.columns.col(j) = mrt_weight(dl_group_powers[j], n, est.gamma_group[j]) *
                        est.g_hat_group.col(j);
  }
  return pm;
}

PrecodingMatrix zf_mucp(const CpEstimate& est, const SystemConfig& config,
                        const std::vector<double>& dl_group_powers) {
  const int g = config.n_groups();
  check_dim(dl_group_powers, g, "group");
  const int n = static_cast<int>(est.g_hat_group.rows());
  if (n <= g) throw InfeasibleError("zf-mucp needs N > G");

  const Eigen::MatrixXcd basis = zf_basis(est.g_hat_group);
  PrecodingMatrix pm;
  pm.scheme = SchemeId::ZfMucp;
  pm.allocated_powers = dl_group_powers;
  pm.columns.resize(n, g);
  for (int j = 0; j < g; ++j) {
    const double scale = std::sqrt(dl_group_powers[j] * est.gamma_group[j] *
                                   static_cast<double>(n - g));
    pm.columns.col(j) = scale * basis.col(j);
  }
  return pm;
}

Eigen::MatrixXcd stream_vectors(const PrecodingMatrix& precoder,
                                const SystemConfig& config) {
  const int g = config.n_groups();
  if (is_multicast(precoder.scheme)) return precoder.columns;

  Eigen::MatrixXcd streams = Eigen::MatrixXcd::Zero(precoder.columns.rows(), g);
  for (int j = 0; j < g; ++j) {
    const int off = config.user_offset(j);
    for (int k = 0; k < config.group_sizes[j]; ++k) {
      streams.col(j) += precoder.columns.col(off + k);
    }
  }
  return streams;
}

}  // namespace mgmcast
