// Experiment driver for the mgmcast library. Talks to the shared library
// exclusively through the C API in mgmcast.h.
//
// Modes:
//   mgmcast --config cfg.json                      solve all schemes once
//   mgmcast --config cfg.json --sweep sweep.json   run a parameter sweep
//   mgmcast --config cfg.json --recommend          pick the best scheme

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mgmcast.h"

namespace {

using nlohmann::ordered_json;

constexpr const char* kSchemeNames[6] = {"mrt-undp", "zf-undp",  "mrt-mudp",
                                         "zf-mudp",  "mrt-mucp", "zf-mucp"};

[[noreturn]] void die(const std::string& message) {
  std::cerr << "mgmcast: " << message << "\n";
  std::exit(1);
}

void check(mgm_status status, const std::string& context) {
  if (status != MGM_OK) die(context + ": " + mgm_last_error());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ordered_json scheme_list_json(const std::string& scheme_flag) {
  ordered_json list = ordered_json::array();
  if (scheme_flag == "all") {
    list.push_back("all");
  } else {
    mgm_scheme parsed;
    check(mgm_scheme_parse(scheme_flag.c_str(), &parsed), "--scheme");
    list.push_back(scheme_flag);
  }
  return list;
}

void write_or_print(mgm_table* table, const std::string& out_path,
                    const std::string& format) {
  if (!out_path.empty()) {
    check(mgm_table_write(table, out_path.c_str(), format.c_str()),
          "writing " + out_path);
    std::cerr << "wrote " << out_path << "\n";
  } else {
    char* text = nullptr;
    check(mgm_table_to_string(table, format.c_str(), &text), "formatting table");
    std::cout << text;
    mgm_string_free(text);
  }
}

int run_recommend(mgm_config* config, uint64_t seed, const std::string& out_path,
                  const std::string& format) {
  mgm_profile* profile = nullptr;
  check(mgm_drop_users(config, seed, &profile), "dropping users");

  mgm_scheme best;
  double best_se = 0.0, margin = 0.0;
  double per_scheme[6];
  check(mgm_recommend(config, profile, &best, &best_se, &margin, per_scheme),
        "recommendation");
  mgm_profile_free(profile);

  std::printf("%-10s %s\n", "scheme", "min_se");
  for (int i = 0; i < 6; ++i) {
    if (per_scheme[i] == per_scheme[i]) {
      std::printf("%-10s %.6g\n", kSchemeNames[i], per_scheme[i]);
    } else {
      std::printf("%-10s infeasible\n", kSchemeNames[i]);
    }
  }
  std::printf("best: %s (min_se %.6g, margin %.6g)\n", mgm_scheme_name(best),
              best_se, margin);

  if (!out_path.empty()) {
    ordered_json doc;
    doc["best_scheme"] = mgm_scheme_name(best);
    doc["min_se"] = best_se;
    doc["margin"] = margin;
    ordered_json per;
    for (int i = 0; i < 6; ++i) {
      if (per_scheme[i] == per_scheme[i]) {
        per[kSchemeNames[i]] = per_scheme[i];
      } else {
        per[kSchemeNames[i]] = nullptr;
      }
    }
    doc["per_scheme_min_se"] = per;
    std::ofstream out(out_path, std::ios::binary);
    if (!out) die("cannot open " + out_path);
    out << doc.dump(2) << "\n";
    std::cerr << "wrote " << out_path << "\n";
  }
  (void)format;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"max-min fair multi-group multicast precoding experiments"};

  std::string config_path;
  std::string sweep_path;
  std::string scheme_flag = "all";
  std::uint64_t seed = 1;
  int drops = 0;
  int mc_samples = 0;
  std::string out_path;
  std::string format = "csv";
  bool recommend = false;

  app.add_option("--config", config_path, "system configuration JSON")
      ->required();
  app.add_option("--sweep", sweep_path, "sweep specification JSON");
  app.add_option("--scheme", scheme_flag, "scheme id or 'all'")
      ->default_val("all");
  app.add_option("--seed", seed, "random seed")->default_val(1);
  app.add_option("--drops", drops, "override the number of user drops");
  app.add_option("--mc-samples", mc_samples,
                 "override the Monte Carlo sample count");
  app.add_option("--out", out_path, "output file (stdout if omitted)");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->default_val("csv");
  app.add_flag("--recommend", recommend, "pick the best scheme for one drop");

  CLI11_PARSE(app, argc, argv);

  mgm_config* config = nullptr;
  check(mgm_config_from_file(config_path.c_str(), &config), config_path);

  if (recommend) {
    const int rc = run_recommend(config, seed, out_path, format);
    mgm_config_free(config);
    return rc;
  }

  ordered_json sweep;
  if (!sweep_path.empty()) {
    sweep = ordered_json::parse(read_file(sweep_path), nullptr, false);
    if (sweep.is_discarded()) die("malformed sweep JSON in " + sweep_path);
  } else {
    // Single-point evaluation of the configured scenario.
    sweep["variable"] = "n_antennas";
    sweep["grid"] = {mgm_config_n_antennas(config)};
  }
  if (app.count("--scheme") > 0 || !sweep.contains("schemes")) {
    sweep["schemes"] = scheme_list_json(scheme_flag);
  }
  if (app.count("--seed") > 0 || !sweep.contains("seed")) sweep["seed"] = seed;
  if (app.count("--drops") > 0) sweep["n_drops"] = drops;
  if (app.count("--mc-samples") > 0) sweep["mc_samples"] = mc_samples;

  mgm_table* table = nullptr;
  check(mgm_run_sweep_json(config, sweep.dump().c_str(), &table), "sweep");
  write_or_print(table, out_path, format);

  mgm_table_free(table);
  mgm_config_free(config);
  return 0;
}
