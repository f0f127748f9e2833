#include "mgmcast/mc_validation.hpp"

#include <cmath>
#include <complex>

#include "mgmcast/closed_form_se.hpp"
#include "mgmcast/errors.hpp"
#include "mgmcast/estimation.hpp"
#include "mgmcast/precoding.hpp"
#include "mgmcast/rng.hpp"

namespace mgmcast {

namespace {

using cplx = std::complex<double>;

/// One-pass accumulator for a complex sequence: mean with a standard error
/// on its real part, central variance, and the standard error of the
/// variance from the raw moments (fourth central moment via expansion).
struct ComplexMoments {
  cplx s1{0.0, 0.0};
  double s2 = 0.0;   // sum |c|^2
  cplx s2c{0.0, 0.0};  // sum c^2
  cplx s3{0.0, 0.0};   // sum |c|^2 c
  double s4 = 0.0;   // sum |c|^4
  long n = 0;

  void add(cplx c) {
    const double a2 = std::norm(c);
    s1 += c;
    s2 += a2;
    s2c += c * c;
    s3 += a2 * c;
    s4 += a2 * a2;
    ++n;
  }

  cplx mean() const { return s1 / static_cast<double>(n); }

  double mean_re_std_error() const {
    const double nn = static_cast<double>(n);
    // sum Re(c)^2 = (Re(sum c^2) + sum |c|^2) / 2
    const double sum_re2 = 0.5 * (s2c.real() + s2);
    const double mre = s1.real() / nn;
    const double var = std::max(0.0, sum_re2 / nn - mre * mre);
    return std::sqrt(var / nn);
  }

  double variance() const {
    const double nn = static_cast<double>(n);
    return std::max(0.0, s2 / nn - std::norm(mean()));
  }

  double variance_std_error() const {
    const double nn = static_cast<double>(n);
    const cplx m = mean();
    const double m2 = std::norm(m);
    // sum |c - m|^4 expanded in the raw sums
    const double central4 = s4 + 2.0 * (std::conj(m) * std::conj(m) * s2c).real() +
                            4.0 * m2 * s2 - 4.0 * (std::conj(m) * s3).real() -
                            3.0 * nn * m2 * m2;
    const double v = variance();
    const double var_of_var = std::max(0.0, central4 / nn - v * v);
    return std::sqrt(var_of_var / nn);
  }
};

struct RealMoments {
  double sum = 0.0;
  double sum_sq = 0.0;
  long n = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++n;
  }
  double mean() const { return sum / static_cast<double>(n); }
  double std_error() const {
    const double nn = static_cast<double>(n);
    const double m = mean();
    return std::sqrt(std::max(0.0, sum_sq / nn - m * m) / nn);
  }
};

double stream_power(const SystemConfig& config,
                    const std::vector<double>& dl_powers, bool per_user,
                    int group) {
  if (!per_user) return dl_powers[group];
  double total = 0.0;
  const int off = config.user_offset(group);
  for (int k = 0; k < config.group_sizes[group]; ++k) total += dl_powers[off + k];
  return total;
}

}  // namespace

UatfClosedTerms closed_uatf_terms(SchemeId scheme, const SystemConfig& config,
                                  int user, const std::vector<double>& betas,
                                  const std::vector<double>& gammas,
                                  const std::vector<double>& dl_powers) {
  const int g = config.n_groups();
  const int k_tot = config.total_users();
  const double n = static_cast<double>(config.n_antennas);
  const int own = config.group_of_user(user);
  const bool per_user = uses_dedicated_pilots(scheme);
  const double beta = betas[user];
  const double gamma = gammas[user];
  const double own_power =
      per_user ? dl_powers[user] : dl_powers[own];

  UatfClosedTerms terms;
  terms.interference.assign(g, 0.0);

  double dof = n;
  switch (scheme) {
    case SchemeId::ZfUndp: dof = n - k_tot; break;
    case SchemeId::ZfMudp: dof = n - (k_tot - config.group_sizes[own]); break;
    case SchemeId::ZfMucp: dof = n - g; break;
    default: break;
  }
  terms.signal_mean = std::sqrt(dof * gamma * own_power);

  if (is_zero_forcing(scheme)) {
    terms.variance = scheme == SchemeId::ZfMudp
                         ? gamma * stream_power(config, dl_powers, per_user, own)
                         : 0.0;
    for (int j = 0; j < g; ++j) {
      terms.interference[j] =
          (beta - gamma) * stream_power(config, dl_powers, per_user, j);
    }
  } else {
    terms.variance = beta * stream_power(config, dl_powers, per_user, own);
    for (int j = 0; j < g; ++j) {
      if (j == own) continue;
      terms.interference[j] = beta * stream_power(config, dl_powers, per_user, j);
    }
  }
  return terms;
}

std::vector<UatfEstimate> estimate_uatf_sinr(
    SchemeId scheme, const SystemConfig& config, const FadingProfile& profile,
    const std::vector<double>& ul_powers, const std::vector<double>& dl_powers,
    int tau_p, int n_samples, std::uint64_t seed) {
  config.validate();
  if (n_samples < 100) throw InvalidArgument("n_samples must be >= 100");
  const int k_tot = config.total_users();
  const int g = config.n_groups();
  if (profile.total_users() != k_tot) {
    throw InvalidArgument("profile does not match the configuration");
  }

  std::vector<ComplexMoments> coeff(k_tot);
  std::vector<std::vector<RealMoments>> interf(k_tot,
                                               std::vector<RealMoments>(g));
  std::vector<RealMoments> cross(k_tot);

  for (int s = 0; s < n_samples; ++s) {
    const std::uint64_t sample_seed = substream(seed, static_cast<std::uint64_t>(s));
    const ChannelRealization real =
        draw_channels(profile, config.n_antennas, substream(sample_seed, 0));

    if (uses_dedicated_pilots(scheme)) {
      const DpEstimate est =
          estimate_dp(real, config, ul_powers, tau_p, substream(sample_seed, 1));

      PrecodingMatrix precoder;
      std::vector<Eigen::MatrixXcd> projected;
      switch (scheme) {
        case SchemeId::MrtUndp: precoder = mrt_undp(est, config, dl_powers); break;
        case SchemeId::ZfUndp: precoder = zf_undp(est, config, dl_powers); break;
        case SchemeId::MrtMudp: precoder = mrt_mudp(est, config, dl_powers); break;
        case SchemeId::ZfMudp:
          projected = zf_mudp_projections(est, config);
          precoder = zf_mudp(est, config, dl_powers);
          break;
        default: break;
      }
      const Eigen::MatrixXcd streams = stream_vectors(precoder, config);

      for (int u = 0; u < k_tot; ++u) {
        const int own = config.group_of_user(u);
        if (!is_zero_forcing(scheme)) {
          // True-channel products per stream; the own-stream coefficient
          // fluctuation absorbs the co-member transmissions.
          const Eigen::RowVectorXcd products =
              real.channels.col(u).adjoint() * streams;
          coeff[u].add(products(own));
          for (int j = 0; j < g; ++j) {
            if (j != own) interf[u][j].add(std::norm(products(j)));
          }
        } else {
          const Eigen::VectorXcd g_hat = est.g_hat.col(u);
          const Eigen::VectorXcd g_err = g_hat - real.channels.col(u);
          const cplx desired =
              scheme == SchemeId::ZfUndp
                  ? cplx(g_hat.dot(precoder.columns.col(u)))
                  : cplx(g_hat.dot(streams.col(own)));
          coeff[u].add(desired);
          const Eigen::RowVectorXcd err_products = g_err.adjoint() * streams;
          for (int j = 0; j < g; ++j) interf[u][j].add(std::norm(err_products(j)));

          if (scheme == SchemeId::ZfMudp) {
            const int k = u - config.user_offset(own);
            const double dof = static_cast<double>(
                config.n_antennas - (k_tot - config.group_sizes[own]));
            const double weight =
                dl_powers[u] > 0.0
                    ? std::sqrt(dl_powers[u] / (dof * est.gamma[u]))
                    : 0.0;
            const cplx own_part = weight * cplx(g_hat.dot(projected[own].col(k)));
            const cplx rest = desired - own_part;
            cross[u].add(2.0 * (own_part * std::conj(rest)).real());
          }
        }
      }
    } else {
      const CpEstimate est =
          estimate_cp(real, config, ul_powers, tau_p, substream(sample_seed, 1));
      const PrecodingMatrix precoder = scheme == SchemeId::MrtMucp
                                           ? mrt_mucp(est, config, dl_powers)
                                           : zf_mucp(est, config, dl_powers);
      const Eigen::MatrixXcd& streams = precoder.columns;

      for (int u = 0; u < k_tot; ++u) {
        const int own = config.group_of_user(u);
        if (scheme == SchemeId::MrtMucp) {
          const Eigen::RowVectorXcd products =
              real.channels.col(u).adjoint() * streams;
          coeff[u].add(products(own));
          for (int j = 0; j < g; ++j) {
            if (j != own) interf[u][j].add(std::norm(products(j)));
          }
        } else {
          const Eigen::VectorXcd g_hat = est.g_hat_user.col(u);
          const Eigen::VectorXcd g_err = g_hat - real.channels.col(u);
          coeff[u].add(cplx(g_hat.dot(streams.col(own))));
          const Eigen::RowVectorXcd err_products = g_err.adjoint() * streams;
          for (int j = 0; j < g; ++j) interf[u][j].add(std::norm(err_products(j)));
        }
      }
    }
  }

  std::vector<UatfEstimate> out(k_tot);
  for (int u = 0; u < k_tot; ++u) {
    UatfEstimate& e = out[u];
    e.scheme = scheme;
    e.user = u;
    e.n_samples = n_samples;
    e.signal_mean = {coeff[u].mean().real(), coeff[u].mean_re_std_error()};
    e.signal_term = e.signal_mean.value * e.signal_mean.value;
    e.variance_term = {coeff[u].variance(), coeff[u].variance_std_error()};
    e.interference_terms.resize(g);
    double denom = 1.0 + e.variance_term.value;
    double denom_var = e.variance_term.std_error * e.variance_term.std_error;
    for (int j = 0; j < g; ++j) {
      if (interf[u][j].n > 0) {
        e.interference_terms[j] = {interf[u][j].mean(), interf[u][j].std_error()};
      }
      denom += e.interference_terms[j].value;
      denom_var += e.interference_terms[j].std_error * e.interference_terms[j].std_error;
    }
    if (scheme == SchemeId::ZfMudp) {
      e.intra_group_cross = TermStat{cross[u].mean(), cross[u].std_error()};
    }
    e.sinr_mc = e.signal_term / denom;
    // Delta method with the terms treated as uncorrelated.
    const double rel_sig =
        e.signal_mean.value != 0.0
            ? 2.0 * e.signal_mean.std_error / std::abs(e.signal_mean.value)
            : 0.0;
    const double rel_den = std::sqrt(denom_var) / denom;
    e.sinr_std_error = e.sinr_mc * std::sqrt(rel_sig * rel_sig + rel_den * rel_den);
  }
  return out;
}

BoundComparison compare_bound(SchemeId scheme, const SystemConfig& config,
                              const FadingProfile& profile,
                              const MmfSolution& solution, int n_samples,
                              std::uint64_t seed) {
  if (solution.scheme != scheme) {
    throw InvalidArgument("solution was produced for a different scheme");
  }
  BoundComparison cmp;
  cmp.estimates =
      estimate_uatf_sinr(scheme, config, profile, solution.ul_powers,
                         solution.dl_powers, solution.tau_p, n_samples, seed);
  cmp.closed_sinr = sinr_closed_form(scheme, config, profile.betas,
                                     solution.gamma_star, solution.dl_powers);
  const int k_tot = config.total_users();
  cmp.rel_deviation.resize(k_tot);
  cmp.within_band.resize(k_tot);
  for (int u = 0; u < k_tot; ++u) {
    const double closed = cmp.closed_sinr[u];
    const double mc = cmp.estimates[u].sinr_mc;
    cmp.rel_deviation[u] = closed != 0.0 ? std::abs(mc - closed) / closed : 0.0;
    cmp.max_rel_deviation = std::max(cmp.max_rel_deviation, cmp.rel_deviation[u]);
    const double band =
        3.0 * cmp.estimates[u].sinr_std_error + 1e-12 * (1.0 + std::abs(closed));
    cmp.within_band[u] = std::abs(mc - closed) <= band;
    if (!cmp.within_band[u]) ++cmp.n_flagged;
  }
  return cmp;
}

}  // namespace mgmcast
