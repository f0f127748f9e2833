#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mgmcast/errors.hpp"
#include "mgmcast/experiments.hpp"
#include "mgmcast/mmf_solvers.hpp"
#include "test_util.hpp"

using namespace mgmcast;

namespace {

const char* kConfigJson = R"({
  "n_antennas": 64,
  "group_sizes": [3, 3],
  "coherence_symbols": 750,
  "dl_power_budget": 40.0,
  "ul_power_caps": 1.0
})";

SweepSpec small_sweep() {
  SweepSpec spec;
  spec.variable = SweepSpec::Variable::NAntennas;
  spec.grid = {16, 32};
  spec.schemes = {SchemeId::ZfUndp, SchemeId::MrtMucp};
  spec.n_drops = 3;
  spec.seed = 5;
  return spec;
}

int count_columns(const std::string& line) {
  int commas = 0;
  for (char c : line) commas += c == ',';
  return commas + 1;
}

}  // namespace

TEST_CASE("config parsing normalizes watts and applies defaults") {
  const SystemConfig cfg = config_from_json_text(kConfigJson);
  CHECK(cfg.n_antennas == 64);
  CHECK(cfg.total_users() == 6);
  CHECK(cfg.coherence_symbols == 750);
  // 40 W over the default noise floor
  CHECK(cfg.dl_power_budget == doctest::Approx(40.0 * 1.256e13).epsilon(1e-3));
  CHECK(cfg.ul_power_caps[0] == doctest::Approx(1.256e13).epsilon(1e-3));
  CHECK(cfg.cell_radius_m == 500.0);
}

TEST_CASE("config parsing accepts pre-normalized powers and per-user caps") {
  const SystemConfig cfg = config_from_json_text(R"({
    "n_antennas": 8, "group_sizes": [2], "coherence_symbols": 100,
    "dl_power_budget": 10.0, "ul_power_caps": [0.1, 0.2],
    "powers_in_watts": false
  })");
  CHECK(cfg.dl_power_budget == 10.0);
  CHECK(cfg.ul_power_caps == std::vector<double>{0.1, 0.2});
}

TEST_CASE("config parsing rejects malformed documents") {
  CHECK_THROWS_AS(config_from_json_text("not json"), InvalidArgument);
  CHECK_THROWS_AS(config_from_json_text(R"({"n_antennas": 8})"), InvalidArgument);
  CHECK_THROWS_AS(config_from_json_text(R"({
    "n_antennas": 8, "group_sizes": [2], "dl_power_budget": 1,
    "ul_power_caps": 1, "typo_key": 3
  })"),
                  InvalidArgument);
  CHECK_THROWS_AS(config_from_file("/nonexistent/path.json"), IoError);
}

TEST_CASE("sweep parsing") {
  const SweepSpec spec = sweep_from_json_text(R"({
    "variable": "dl_power", "grid": [1.0, 40.0],
    "schemes": ["zf-undp", "mrt-mucp"], "n_drops": 7, "seed": 3,
    "mc_validate": true, "mc_samples": 500
  })");
  CHECK(spec.variable == SweepSpec::Variable::DlPower);
  CHECK(spec.grid == std::vector<double>{1.0, 40.0});
  CHECK(spec.schemes == std::vector<SchemeId>{SchemeId::ZfUndp, SchemeId::MrtMucp});
  CHECK(spec.n_drops == 7);
  CHECK(spec.mc_validate);
  CHECK(spec.mc_samples == 500);
  CHECK_FALSE(spec.omnicast);

  CHECK_THROWS_AS(sweep_from_json_text(R"({"variable": "nope", "grid": [1]})"),
                  InvalidArgument);
  CHECK_THROWS_AS(sweep_from_json_text(R"({
    "variable": "dl_power", "grid": [1], "schemes": ["zf"]
  })"),
                  InvalidArgument);
}

TEST_CASE("sweep rows follow grid then scheme enum order") {
  const SystemConfig cfg = config_from_json_text(kConfigJson);
  SweepSpec spec = small_sweep();
  // list the schemes out of order on purpose
  spec.schemes = {SchemeId::MrtMucp, SchemeId::ZfUndp};
  const ResultTable table = run_sweep(spec, cfg);
  REQUIRE(table.rows.size() == 4);
  CHECK(table.rows[0].grid_value == 16);
  CHECK(table.rows[0].scheme == SchemeId::ZfUndp);
  CHECK(table.rows[1].scheme == SchemeId::MrtMucp);
  CHECK(table.rows[2].grid_value == 32);
}

TEST_CASE("infeasible grid points carry a sentinel, never zero") {
  const SystemConfig cfg = config_from_json_text(kConfigJson);
  SweepSpec spec = small_sweep();
  spec.grid = {4, 32};  // N = 4 < K_tot: zf-undp infeasible there
  const ResultTable table = run_sweep(spec, cfg);

  const SweepRow& bad = table.rows[0];
  CHECK(bad.scheme == SchemeId::ZfUndp);
  CHECK_FALSE(bad.mean_min_se.has_value());
  CHECK(bad.feasible_fraction == 0.0);

  const std::string csv = table_to_string(table, "csv");
  CHECK(csv.find("NA") != std::string::npos);

  // every feasible cell is positive and finite
  for (const auto& row : table.rows) {
    if (row.mean_min_se) {
      CHECK(*row.mean_min_se > 0.0);
      CHECK(std::isfinite(*row.mean_min_se));
    }
  }
}

TEST_CASE("csv output is deterministic and rectangular") {
  const SystemConfig cfg = config_from_json_text(kConfigJson);
  const SweepSpec spec = small_sweep();
  const std::string a = table_to_string(run_sweep(spec, cfg), "csv");
  const std::string b = table_to_string(run_sweep(spec, cfg), "csv");
  CHECK(a == b);

  std::istringstream lines(a);
  std::string line;
  std::getline(lines, line);
  const int width = count_columns(line);
  CHECK(width == 7);
  while (std::getline(lines, line)) {
    CHECK(count_columns(line) == width);
  }
}

TEST_CASE("optional columns widen the schema") {
  const SystemConfig cfg = config_from_json_text(kConfigJson);
  SweepSpec spec = small_sweep();
  spec.grid = {16};
  spec.n_drops = 1;
  spec.omnicast = true;
  spec.omnicast_fading_samples = 10;
  spec.mc_validate = true;
  spec.mc_samples = 200;
  const ResultTable table = run_sweep(spec, cfg);
  const std::string csv = table_to_string(table, "csv");
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(count_columns(header) == 9);
  CHECK(header.find("mc_rel_dev") != std::string::npos);
  CHECK(header.find("omnicast_se") != std::string::npos);
  for (const auto& row : table.rows) {
    CHECK(row.omnicast_se.has_value());
    if (row.feasible_fraction == 1.0) CHECK(row.mc_rel_dev.has_value());
  }
}

TEST_CASE("empty table emits only the header") {
  ResultTable table;
  const std::string csv = table_to_string(table, "csv");
  CHECK(csv ==
        "grid_variable,grid_value,scheme,mean_min_se,std_min_se,mean_tau_star,"
        "feasible_fraction\n");
}

TEST_CASE("json round-trips the csv content") {
  const SystemConfig cfg = config_from_json_text(kConfigJson);
  SweepSpec spec = small_sweep();
  spec.grid = {16};
  const ResultTable table = run_sweep(spec, cfg);
  const std::string json_text = table_to_string(table, "json");
  CHECK(json_text.find("\"scheme\": \"zf-undp\"") != std::string::npos);
  CHECK(json_text.find("\"mean_min_se\"") != std::string::npos);
  CHECK_THROWS_AS(table_to_string(table, "xml"), InvalidArgument);
}

TEST_CASE("emit_results writes files and surfaces IO failures") {
  const SystemConfig cfg = config_from_json_text(kConfigJson);
  SweepSpec spec = small_sweep();
  spec.grid = {16};
  const ResultTable table = run_sweep(spec, cfg);

  const std::string path = "test_experiments_out.csv";
  emit_results(table, path, "csv");
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str() == table_to_string(table, "csv"));
  in.close();
  std::remove(path.c_str());

  CHECK_THROWS_AS(emit_results(table, "/nonexistent/dir/out.csv", "csv"), IoError);
}

TEST_CASE("power sweeps normalize watts grid values") {
  const SystemConfig cfg = config_from_json_text(kConfigJson);
  SweepSpec spec;
  spec.variable = SweepSpec::Variable::DlPower;
  spec.grid = {40.0};
  spec.schemes = {SchemeId::MrtMucp};
  spec.n_drops = 2;
  spec.seed = 9;
  const ResultTable in_watts = run_sweep(spec, cfg);

  // the same sweep expressed pre-normalized
  SweepSpec raw = spec;
  raw.grid_in_watts = false;
  raw.grid = {normalize_power(40.0, cfg.noise_psd_dbm_per_hz, cfg.carrier_bw_hz)};
  const ResultTable normalized = run_sweep(raw, cfg);
  CHECK(*in_watts.rows[0].mean_min_se == *normalized.rows[0].mean_min_se);
}

TEST_CASE("n_groups sweep rebuilds uniform groups") {
  const SystemConfig cfg = config_from_json_text(kConfigJson);
  SweepSpec spec;
  spec.variable = SweepSpec::Variable::NGroups;
  spec.grid = {1, 4};
  spec.schemes = {SchemeId::MrtMucp};
  spec.n_drops = 2;
  const ResultTable table = run_sweep(spec, cfg);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0].feasible_fraction == 1.0);
  CHECK(table.rows[1].feasible_fraction == 1.0);
}

TEST_CASE("recommendation follows the SNR regimes on ensemble average") {
  // High SNR with N well above K_tot favors zf-undp; low SNR with
  // K_tot a large fraction of N favors the co-pilot schemes.
  int zf_undp_wins = 0, copilot_wins = 0;
  const int n_drops = 10;

  const auto high = testutil::make_config_watts(120, {15, 15, 15}, 750, 40.0, 1.0);
  const auto low = testutil::make_config_watts(120, {15, 15, 15}, 750, 1.0, 0.1);
  for (int d = 0; d < n_drops; ++d) {
    const auto rec_high = recommend_scheme(high, drop_users(high, 3000 + d));
    zf_undp_wins += rec_high.best_scheme == SchemeId::ZfUndp;
    const auto rec_low = recommend_scheme(low, drop_users(low, 4000 + d));
    copilot_wins += rec_low.best_scheme == SchemeId::MrtMucp ||
                    rec_low.best_scheme == SchemeId::ZfMucp;
  }
  CHECK(zf_undp_wins > n_drops / 2);
  CHECK(copilot_wins > n_drops / 2);
}

TEST_CASE("recommendation gates infeasible schemes and tracks the argmax") {
  SystemConfig cfg = config_from_json_text(kConfigJson);
  cfg.n_antennas = 5;  // below K_tot = 6: zf-undp can never enter
  const FadingProfile profile = drop_users(cfg, 17);
  const Recommendation rec = recommend_scheme(cfg, profile);
  CHECK_FALSE(rec.feasible[scheme_index(SchemeId::ZfUndp)]);
  CHECK(rec.best_scheme != SchemeId::ZfUndp);

  double best = -1.0;
  for (SchemeId s : kAllSchemes) {
    if (!rec.feasible[scheme_index(s)]) continue;
    if (rec.per_scheme_se[scheme_index(s)] > best) best = rec.per_scheme_se[scheme_index(s)];
  }
  CHECK(rec.per_scheme_se[scheme_index(rec.best_scheme)] == best);
  CHECK(rec.margin >= 0.0);

  // cross-check against the solver it wraps
  const MmfSolution direct =
      optimize_pilot_length(rec.best_scheme, cfg, profile.betas);
  CHECK(direct.min_se == rec.per_scheme_se[scheme_index(rec.best_scheme)]);
}
