#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mgmcast/closed_form_se.hpp"
#include "mgmcast/errors.hpp"
#include "mgmcast/rng.hpp"
#include "test_util.hpp"

using namespace mgmcast;

TEST_CASE("hand-evaluated SINR fixed points") {
  SUBCASE("zf-mucp, single group") {
    const auto cfg = testutil::make_config(100, {1}, 750, 10.0, 0.1);
    const auto sinr = sinr_closed_form(SchemeId::ZfMucp, cfg, {1.0}, {0.5}, {10.0});
    CHECK(sinr[0] == doctest::Approx(82.5).epsilon(1e-12));
  }
  SUBCASE("zf-mudp, one group of two") {
    const auto cfg = testutil::make_config(100, {2}, 750, 10.0, 0.1);
    const auto sinr = sinr_closed_form(SchemeId::ZfMudp, cfg, {1.0, 1.0},
                                       {0.5, 0.5}, {5.0, 5.0});
    CHECK(sinr[0] == doctest::Approx(250.0 / 11.0).epsilon(1e-12));
    CHECK(sinr[1] == doctest::Approx(250.0 / 11.0).epsilon(1e-12));
  }
  SUBCASE("mrt with zero power is zero") {
    const auto cfg = testutil::make_config(100, {2}, 750, 10.0, 0.1);
    const auto sinr = sinr_closed_form(SchemeId::MrtUndp, cfg, {1.0, 1.0},
                                       {0.5, 0.5}, {0.0, 10.0});
    CHECK(sinr[0] == 0.0);
    CHECK(sinr[1] > 0.0);
  }
}

TEST_CASE("se_from_sinr prelog arithmetic") {
  CHECK(se_from_sinr({1.0}, 375, 750)[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(se_from_sinr({0.0}, 100, 750)[0] == 0.0);
  CHECK(se_from_sinr({3.0}, 250, 750)[0] ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(se_from_sinr({1.0}, 750, 750), InvalidArgument);
  CHECK_THROWS_AS(se_from_sinr({1.0}, 800, 750), InvalidArgument);
}

TEST_CASE("evaluate_se bundles sinr and prelog") {
  const auto cfg = testutil::make_config(100, {1}, 750, 10.0, 0.1);
  const SePoint point =
      evaluate_se(SchemeId::ZfMucp, cfg, {1.0}, {0.5}, {10.0}, 250);
  CHECK(point.prelog == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(point.per_user_sinr[0] == doctest::Approx(82.5).epsilon(1e-12));
  CHECK(point.per_user_se[0] ==
        doctest::Approx((2.0 / 3.0) * std::log2(83.5)).epsilon(1e-12));
}

TEST_CASE("dimension mismatches are rejected") {
  const auto cfg = testutil::make_config(100, {2, 2}, 750, 10.0, 0.1);
  const std::vector<double> betas = {1, 1, 1, 1};
  const std::vector<double> gammas = {0.5, 0.5, 0.5, 0.5};
  // co-pilot scheme given per-user powers
  CHECK_THROWS_AS(
      sinr_closed_form(SchemeId::MrtMucp, cfg, betas, gammas, {1, 1, 1, 1}),
      InvalidArgument);
  // dedicated scheme given per-group powers
  CHECK_THROWS_AS(sinr_closed_form(SchemeId::MrtUndp, cfg, betas, gammas, {1, 1}),
                  InvalidArgument);
}

TEST_CASE("monotonicity in own power, own gamma, and others' power") {
  RandomStream stream(3);
  const auto cfg = testutil::make_config(64, {2, 3}, 750, 10.0, 0.1);
  const int k_tot = cfg.total_users();

  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> betas(k_tot), gammas(k_tot), dl(k_tot), dl_g(2);
    for (int u = 0; u < k_tot; ++u) {
      betas[u] = 0.2 + stream.uniform();
      gammas[u] = betas[u] * (0.2 + 0.7 * stream.uniform());
      dl[u] = 0.2 + stream.uniform();
    }
    dl_g = {0.5 + stream.uniform(), 0.5 + stream.uniform()};

    for (SchemeId s : kAllSchemes) {
      const bool per_user = uses_dedicated_pilots(s);
      const auto& powers = per_user ? dl : dl_g;
      const auto base = sinr_closed_form(s, cfg, betas, gammas, powers);

      auto more_own = powers;
      more_own[0] *= 1.05;
      CHECK(sinr_closed_form(s, cfg, betas, gammas, more_own)[0] > base[0]);

      auto more_gamma = gammas;
      more_gamma[0] = std::min(betas[0], gammas[0] * 1.05);
      if (more_gamma[0] > gammas[0]) {
        CHECK(sinr_closed_form(s, cfg, betas, more_gamma, powers)[0] > base[0]);
      }

      auto more_other = powers;
      more_other[powers.size() - 1] *= 1.3;
      const int probe = 0;  // user 0 sits in the first group
      CHECK(sinr_closed_form(s, cfg, betas, gammas, more_other)[probe] <
            base[probe]);
    }
  }
}

TEST_CASE("mrt unicast and multicast dp coincide at equal powers") {
  RandomStream stream(4);
  const auto cfg = testutil::make_config(128, {3, 2, 1}, 750, 10.0, 0.1);
  const int k_tot = cfg.total_users();
  std::vector<double> betas(k_tot), gammas(k_tot), dl(k_tot);
  for (int u = 0; u < k_tot; ++u) {
    betas[u] = 0.2 + stream.uniform();
    gammas[u] = betas[u] * 0.6;
    dl[u] = 0.2 + stream.uniform();
  }
  const auto a = sinr_closed_form(SchemeId::MrtUndp, cfg, betas, gammas, dl);
  const auto b = sinr_closed_form(SchemeId::MrtMudp, cfg, betas, gammas, dl);
  CHECK(a == b);
}

TEST_CASE("MRT to ZF switch rescales signal and strips estimated interference") {
  // Switching precoders at equal powers multiplies the numerator by
  // (N - kappa)/N and replaces beta with (beta - gamma) in the budget term.
  RandomStream stream(5);
  const auto cfg = testutil::make_config(96, {2, 2}, 750, 10.0, 0.1);
  const int k_tot = cfg.total_users();
  const double n = 96.0;

  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> betas(k_tot), gammas(k_tot), dl(k_tot), dl_g(2);
    for (int u = 0; u < k_tot; ++u) {
      betas[u] = 0.2 + stream.uniform();
      gammas[u] = betas[u] * (0.3 + 0.5 * stream.uniform());
      dl[u] = 0.2 + stream.uniform();
    }
    dl_g = {0.5 + stream.uniform(), 0.5 + stream.uniform()};
    const double p_dp = dl[0] + dl[1] + dl[2] + dl[3];
    const double p_cp = dl_g[0] + dl_g[1];

    const auto mrt = sinr_closed_form(SchemeId::MrtUndp, cfg, betas, gammas, dl);
    const auto zf = sinr_closed_form(SchemeId::ZfUndp, cfg, betas, gammas, dl);
    for (int u = 0; u < k_tot; ++u) {
      const double rebuilt = mrt[u] * ((n - k_tot) / n) *
                             (1.0 + betas[u] * p_dp) /
                             (1.0 + (betas[u] - gammas[u]) * p_dp);
      CHECK(zf[u] == doctest::Approx(rebuilt).epsilon(1e-12));
    }

    const auto mrt_cp =
        sinr_closed_form(SchemeId::MrtMucp, cfg, betas, gammas, dl_g);
    const auto zf_cp =
        sinr_closed_form(SchemeId::ZfMucp, cfg, betas, gammas, dl_g);
    for (int u = 0; u < k_tot; ++u) {
      const double rebuilt = mrt_cp[u] * ((n - 2.0) / n) *
                             (1.0 + betas[u] * p_cp) /
                             (1.0 + (betas[u] - gammas[u]) * p_cp);
      CHECK(zf_cp[u] == doctest::Approx(rebuilt).epsilon(1e-12));
    }
  }
}
