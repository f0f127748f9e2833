#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mgmcast/errors.hpp"
#include "mgmcast/estimation.hpp"
#include "mgmcast/rng.hpp"
#include "test_util.hpp"

using namespace mgmcast;

namespace {

FadingProfile unit_profile(int users, double beta = 1.0) {
  FadingProfile profile;
  profile.distances_m.assign(users, 100.0);
  profile.betas.assign(users, beta);
  return profile;
}

}  // namespace

TEST_CASE("gamma closed forms") {
  // tau p = 1, beta = 1: gamma = 1 / (1 + 1)
  CHECK(gamma_dedicated(10, 0.1, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(gamma_composite(10, {0.1}, {1.0}) == doctest::Approx(0.5).epsilon(1e-12));
  // single-user group: co-pilot equals dedicated
  CHECK(gamma_copilot(10, {0.1}, {1.0}, 0) ==
        doctest::Approx(gamma_dedicated(10, 0.1, 1.0)).epsilon(1e-12));
}

TEST_CASE("zero pilot power gives a zero estimate") {
  const auto cfg = testutil::make_config(8, {2}, 750, 10.0, 1.0);
  const auto real = draw_channels(unit_profile(2), 8, 3);
  const auto est = estimate_dp(real, cfg, {0.0, 0.0}, 2, 4);
  CHECK(est.g_hat.norm() == 0.0);
  CHECK(est.gamma[0] == 0.0);
  CHECK(est.gamma[1] == 0.0);
}

TEST_CASE("pilot length preconditions") {
  const auto cfg = testutil::make_config(8, {2, 1}, 750, 10.0, 1.0);
  const auto real = draw_channels(unit_profile(3), 8, 3);
  CHECK_THROWS_AS(estimate_dp(real, cfg, {0.1, 0.1, 0.1}, 2, 4), InfeasibleError);
  CHECK_THROWS_AS(estimate_cp(real, cfg, {0.1, 0.1, 0.1}, 1, 4), InfeasibleError);
  CHECK_NOTHROW(estimate_dp(real, cfg, {0.1, 0.1, 0.1}, 3, 4));
  CHECK_NOTHROW(estimate_cp(real, cfg, {0.1, 0.1, 0.1}, 2, 4));
}

TEST_CASE("large pilot energy approaches perfect estimation") {
  const auto cfg = testutil::make_config(64, {1}, 750, 10.0, 1.0);
  const auto profile = unit_profile(1);
  double err = 0.0;
  const int n_draws = 200;
  for (int d = 0; d < n_draws; ++d) {
    const auto real = draw_channels(profile, 64, d);
    const auto est = estimate_dp(real, cfg, {1e9}, 1, 7000 + d);
    err += (est.g_hat.col(0) - real.channels.col(0)).squaredNorm() / 64.0;
  }
  CHECK(err / n_draws <= 1e-6);
  CHECK(gamma_dedicated(1, 1e9, 1.0) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("variance bookkeeping over draws") {
  const auto cfg = testutil::make_config(16, {2}, 750, 10.0, 1.0);
  FadingProfile profile = unit_profile(2);
  profile.betas = {1.0, 0.3};
  const std::vector<double> powers = {0.2, 0.4};
  const int tau = 5;
  const int n_draws = 8000;

  std::vector<double> hat_var(2, 0.0), err_var(2, 0.0), cross_re(2, 0.0);
  for (int d = 0; d < n_draws; ++d) {
    const auto real = draw_channels(profile, 16, d);
    const auto est = estimate_dp(real, cfg, powers, tau, 90000 + d);
    for (int u = 0; u < 2; ++u) {
      const Eigen::VectorXcd err = est.g_hat.col(u) - real.channels.col(u);
      hat_var[u] += est.g_hat.col(u).squaredNorm() / 16.0;
      err_var[u] += err.squaredNorm() / 16.0;
      cross_re[u] += est.g_hat.col(u).dot(err).real() / 16.0;
    }
  }
  for (int u = 0; u < 2; ++u) {
    const double gamma = gamma_dedicated(tau, powers[u], profile.betas[u]);
    const double n = static_cast<double>(n_draws);
    CHECK(hat_var[u] / n == doctest::Approx(gamma).epsilon(0.05));
    CHECK(err_var[u] / n ==
          doctest::Approx(profile.betas[u] - gamma).epsilon(0.05));
    // MMSE orthogonality: estimate and error are uncorrelated.
    CHECK(std::abs(cross_re[u] / n) <= 0.05 * profile.betas[u]);
  }
}

TEST_CASE("co-pilot estimates are exactly collinear with the composite") {
  const auto cfg = testutil::make_config(32, {3, 2}, 750, 10.0, 1.0);
  FadingProfile profile = unit_profile(5);
  profile.betas = {1.0, 0.5, 0.25, 2.0, 0.75};
  const std::vector<double> powers = {0.1, 0.2, 0.3, 0.4, 0.5};
  const int tau = 4;

  const auto real = draw_channels(profile, 32, 11);
  const auto est = estimate_cp(real, cfg, powers, tau, 12);

  for (int j = 0; j < cfg.n_groups(); ++j) {
    const int off = cfg.user_offset(j);
    double sum = 0.0;
    for (int k = 0; k < cfg.group_sizes[j]; ++k) {
      sum += powers[off + k] * profile.betas[off + k];
    }
    for (int k = 0; k < cfg.group_sizes[j]; ++k) {
      const int u = off + k;
      const double c =
          std::sqrt(tau * powers[u]) * profile.betas[u] / (tau * sum);
      const double residual =
          (est.g_hat_user.col(u) - c * est.g_hat_group.col(j)).norm();
      CHECK(residual <= 1e-12 * est.g_hat_user.col(u).norm());
    }
  }
}

TEST_CASE("contamination only hurts: gamma_cp <= gamma_dp") {
  RandomStream stream(77);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 2 + static_cast<int>(stream.uniform() * 4);
    std::vector<double> powers(k), betas(k);
    for (int m = 0; m < k; ++m) {
      powers[m] = 0.05 + stream.uniform();
      betas[m] = std::pow(10.0, -1.0 - 3.0 * stream.uniform());
    }
    const int tau = 2 + static_cast<int>(stream.uniform() * 20);
    for (int m = 0; m < k; ++m) {
      CHECK(gamma_copilot(tau, powers, betas, m) <=
            gamma_dedicated(tau, powers[m], betas[m]) + 1e-15);
    }
  }
}

TEST_CASE("single-user group: cp estimate matches dp statistics") {
  const auto cfg = testutil::make_config(16, {1}, 750, 10.0, 1.0);
  FadingProfile profile = unit_profile(1, 0.8);
  const std::vector<double> powers = {0.25};
  const auto real = draw_channels(profile, 16, 5);
  const auto dp = estimate_dp(real, cfg, powers, 6, 99);
  const auto cp = estimate_cp(real, cfg, powers, 6, 99);
  CHECK(cp.gamma_user[0] == doctest::Approx(dp.gamma[0]).epsilon(1e-12));
  // identical seeds, identical observation model: identical estimate
  CHECK((cp.g_hat_user.col(0) - dp.g_hat.col(0)).norm() <=
        1e-12 * dp.g_hat.col(0).norm());
}
