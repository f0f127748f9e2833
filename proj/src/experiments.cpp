#include "mgmcast/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "mgmcast/errors.hpp"
#include "mgmcast/mc_validation.hpp"
#include "mgmcast/mmf_solvers.hpp"
#include "mgmcast/omnicast.hpp"
#include "mgmcast/rng.hpp"

namespace mgmcast {

namespace {

using nlohmann::json;

// Substream labels for the independent random uses inside one sweep.
constexpr std::uint64_t kDropStream = 0x64726F70;      // user drops
constexpr std::uint64_t kMcStream = 0x6D63;            // bound validation
constexpr std::uint64_t kOmniStream = 0x6F6D6E69;      // omnicast baseline

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_number(*v) : "NA";
}

void check_known_keys(const json& doc, const std::vector<std::string>& known,
                      const char* what) {
  for (const auto& item : doc.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      throw InvalidArgument(std::string("unknown ") + what + " key: " +
                            item.key());
    }
  }
}

json parse_json(const std::string& text, const char* what) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw InvalidArgument(std::string("malformed ") + what +
                          " document: expected a JSON object");
  }
  return doc;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failure on " + path);
  return buffer.str();
}

SystemConfig apply_variable(const SystemConfig& base, const SweepSpec& spec,
                            double value) {
  SystemConfig cfg = base;
  const auto normalized = [&](double watts) {
    return spec.grid_in_watts
               ? normalize_power(watts, cfg.noise_psd_dbm_per_hz, cfg.carrier_bw_hz)
               : watts;
  };
  switch (spec.variable) {
    case SweepSpec::Variable::NAntennas:
      cfg.n_antennas = static_cast<int>(value);
      if (static_cast<double>(cfg.n_antennas) != value || cfg.n_antennas < 1) {
        throw InvalidArgument("n_antennas grid values must be positive integers");
      }
      break;
    case SweepSpec::Variable::DlPower:
      cfg.dl_power_budget = normalized(value);
      break;
    case SweepSpec::Variable::UlCap:
      std::fill(cfg.ul_power_caps.begin(), cfg.ul_power_caps.end(),
                normalized(value));
      break;
    case SweepSpec::Variable::NGroups: {
      const int g = static_cast<int>(value);
      if (static_cast<double>(g) != value || g < 1) {
        throw InvalidArgument("n_groups grid values must be positive integers");
      }
      for (int k : base.group_sizes) {
        if (k != base.group_sizes[0]) {
          throw InvalidArgument(
              "n_groups sweeps need uniform group sizes in the base config");
        }
      }
      for (double cap : base.ul_power_caps) {
        if (cap != base.ul_power_caps[0]) {
          throw InvalidArgument(
              "n_groups sweeps need a uniform uplink cap in the base config");
        }
      }
      cfg.group_sizes.assign(g, base.group_sizes[0]);
      cfg.ul_power_caps.assign(g * base.group_sizes[0], base.ul_power_caps[0]);
      break;
    }
  }
  cfg.validate();
  return cfg;
}

}  // namespace

const char* variable_name(SweepSpec::Variable v) {
  switch (v) {
    case SweepSpec::Variable::NAntennas: return "n_antennas";
    case SweepSpec::Variable::DlPower: return "dl_power";
    case SweepSpec::Variable::UlCap: return "ul_cap";
    case SweepSpec::Variable::NGroups: return "n_groups";
  }
  return "?";
}

ResultTable run_sweep(const SweepSpec& spec, const SystemConfig& config) {
  config.validate();
  if (spec.grid.empty()) throw InvalidArgument("sweep grid must be nonempty");
  if (!std::is_sorted(spec.grid.begin(), spec.grid.end())) {
    throw InvalidArgument("sweep grid must be sorted ascending");
  }
  if (spec.n_drops < 1) throw InvalidArgument("n_drops must be >= 1");
  if (spec.schemes.empty()) throw InvalidArgument("sweep needs at least one scheme");

  std::vector<SchemeId> schemes;
  for (SchemeId s : kAllSchemes) {
    if (std::find(spec.schemes.begin(), spec.schemes.end(), s) != spec.schemes.end()) {
      schemes.push_back(s);
    }
  }

  ResultTable table;
  table.has_mc = spec.mc_validate;
  table.has_omni = spec.omnicast;

  for (std::size_t gi = 0; gi < spec.grid.size(); ++gi) {
    const SystemConfig cfg = apply_variable(config, spec, spec.grid[gi]);

    std::optional<double> omni_value;
    if (spec.omnicast) {
      omni_value = omnicast_se(cfg, spec.n_drops, spec.omnicast_fading_samples,
                               substream(spec.seed, kOmniStream + gi))
                       .se;
    }

    // One drop ensemble per grid point, shared by all schemes.
    std::vector<FadingProfile> profiles(spec.n_drops);
    for (int d = 0; d < spec.n_drops; ++d) {
      profiles[d] = drop_users(
          cfg, substream(spec.seed, kDropStream + static_cast<std::uint64_t>(d)));
    }

    for (SchemeId scheme : schemes) {
      SweepRow row;
      row.grid_variable = variable_name(spec.variable);
      row.grid_value = spec.grid[gi];
      row.scheme = scheme;
      row.omnicast_se = omni_value;

      if (!scheme_feasible(scheme, cfg)) {
        table.rows.push_back(std::move(row));
        continue;
      }
      row.feasible_fraction = 1.0;

      double sum = 0.0, sum_sq = 0.0, tau_sum = 0.0;
      MmfSolution first_solution;
      for (int d = 0; d < spec.n_drops; ++d) {
        const MmfSolution sol = optimize_pilot_length(scheme, cfg, profiles[d].betas);
        if (d == 0) first_solution = sol;
        sum += sol.min_se;
        sum_sq += sol.min_se * sol.min_se;
        tau_sum += static_cast<double>(sol.tau_p);
      }
      const double n = static_cast<double>(spec.n_drops);
      row.mean_min_se = sum / n;
      row.std_min_se =
          spec.n_drops > 1
              ? std::sqrt(std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0)))
              : 0.0;
      row.mean_tau_star = tau_sum / n;

      if (spec.mc_validate) {
        // Validated on the first drop only; a full per-drop validation is
        // orders of magnitude more expensive than the sweep itself.
        const BoundComparison cmp = compare_bound(
            scheme, cfg, profiles[0], first_solution, spec.mc_samples,
            substream(spec.seed,
                      kMcStream + gi * kAllSchemes.size() + scheme_index(scheme)));
        row.mc_rel_dev = cmp.max_rel_deviation;
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

Recommendation recommend_scheme(const SystemConfig& config,
                                const FadingProfile& profile) {
  config.validate();
  Recommendation rec;
  rec.per_scheme_se.fill(std::numeric_limits<double>::quiet_NaN());
  rec.feasible.fill(false);

  double best = -1.0, second = -1.0;
  bool any = false;
  for (SchemeId s : kAllSchemes) {
    if (!scheme_feasible(s, config)) continue;
    const MmfSolution sol = optimize_pilot_length(s, config, profile.betas);
    rec.feasible[scheme_index(s)] = true;
    rec.per_scheme_se[scheme_index(s)] = sol.min_se;
    if (!any || sol.min_se > best) {
      second = any ? best : -1.0;
      best = sol.min_se;
      rec.best_scheme = s;
      any = true;
    } else if (sol.min_se > second) {
      second = sol.min_se;
    }
  }
  if (!any) throw InfeasibleError("no scheme is feasible for this configuration");
  rec.margin = second >= 0.0 ? best - second : best;
  return rec;
}

void emit_csv(const ResultTable& table, std::ostream& out) {
  out << "grid_variable,grid_value,scheme,mean_min_se,std_min_se,mean_tau_star,"
         "feasible_fraction";
  if (table.has_mc) out << ",mc_rel_dev";
  if (table.has_omni) out << ",omnicast_se";
  out << "\n";
  for (const SweepRow& row : table.rows) {
    out << row.grid_variable << ',' << format_number(row.grid_value) << ','
        << scheme_name(row.scheme) << ',' << format_optional(row.mean_min_se)
        << ',' << format_optional(row.std_min_se) << ','
        << format_optional(row.mean_tau_star) << ','
        << format_number(row.feasible_fraction);
    if (table.has_mc) out << ',' << format_optional(row.mc_rel_dev);
    if (table.has_omni) out << ',' << format_optional(row.omnicast_se);
    out << "\n";
  }
}

void emit_json(const ResultTable& table, std::ostream& out) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  const auto put = [](nlohmann::ordered_json& obj, const char* key,
                      const std::optional<double>& v) {
    if (v) {
      obj[key] = *v;
    } else {
      obj[key] = nullptr;
    }
  };
  for (const SweepRow& row : table.rows) {
    nlohmann::ordered_json obj;
    obj["grid_variable"] = row.grid_variable;
    obj["grid_value"] = row.grid_value;
    obj["scheme"] = scheme_name(row.scheme);
    put(obj, "mean_min_se", row.mean_min_se);
    put(obj, "std_min_se", row.std_min_se);
    put(obj, "mean_tau_star", row.mean_tau_star);
    obj["feasible_fraction"] = row.feasible_fraction;
    if (table.has_mc) put(obj, "mc_rel_dev", row.mc_rel_dev);
    if (table.has_omni) put(obj, "omnicast_se", row.omnicast_se);
    rows.push_back(std::move(obj));
  }
  out << rows.dump(2) << "\n";
}

std::string table_to_string(const ResultTable& table, const std::string& format) {
  std::ostringstream out;
  if (format == "csv") {
    emit_csv(table, out);
  } else if (format == "json") {
    emit_json(table, out);
  } else {
    throw InvalidArgument("unknown output format: " + format);
  }
  return out.str();
}

void emit_results(const ResultTable& table, const std::string& path,
                  const std::string& format) {
  const std::string text = table_to_string(table, format);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write failure on " + path);
}

SystemConfig config_from_json_text(const std::string& text) {
  const json doc = parse_json(text, "config");
  check_known_keys(doc,
                   {"n_antennas", "group_sizes", "n_groups", "users_per_group",
                    "coherence_symbols", "dl_power_budget", "ul_power_caps",
                    "powers_in_watts", "carrier_bw_hz", "noise_psd_dbm_per_hz",
                    "cell_radius_m", "exclusion_radius_m", "pathloss_exponent",
                    "pathloss_ref"},
                   "config");

  SystemConfig cfg;
  try {
    cfg.n_antennas = doc.at("n_antennas").get<int>();
    if (doc.contains("group_sizes")) {
      cfg.group_sizes = doc.at("group_sizes").get<std::vector<int>>();
    } else {
      const int g = doc.at("n_groups").get<int>();
      const int k = doc.at("users_per_group").get<int>();
      cfg.group_sizes.assign(g, k);
    }
    cfg.coherence_symbols = doc.value("coherence_symbols", 750);
    if (doc.contains("carrier_bw_hz")) cfg.carrier_bw_hz = doc.at("carrier_bw_hz").get<double>();
    if (doc.contains("noise_psd_dbm_per_hz")) {
      cfg.noise_psd_dbm_per_hz = doc.at("noise_psd_dbm_per_hz").get<double>();
    }
    if (doc.contains("cell_radius_m")) cfg.cell_radius_m = doc.at("cell_radius_m").get<double>();
    if (doc.contains("exclusion_radius_m")) {
      cfg.exclusion_radius_m = doc.at("exclusion_radius_m").get<double>();
    }
    if (doc.contains("pathloss_exponent")) {
      cfg.pathloss_exponent = doc.at("pathloss_exponent").get<double>();
    }
    if (doc.contains("pathloss_ref")) cfg.pathloss_ref = doc.at("pathloss_ref").get<double>();

    const bool in_watts = doc.value("powers_in_watts", true);
    const auto normalized = [&](double p) {
      return in_watts
                 ? normalize_power(p, cfg.noise_psd_dbm_per_hz, cfg.carrier_bw_hz)
                 : p;
    };
    cfg.dl_power_budget = normalized(doc.at("dl_power_budget").get<double>());

    const json& caps = doc.at("ul_power_caps");
    const int k_tot = cfg.total_users();
    if (caps.is_number()) {
      cfg.ul_power_caps.assign(k_tot, normalized(caps.get<double>()));
    } else {
      cfg.ul_power_caps = caps.get<std::vector<double>>();
      for (double& c : cfg.ul_power_caps) c = normalized(c);
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("bad config document: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

SystemConfig config_from_file(const std::string& path) {
  return config_from_json_text(read_text_file(path));
}

SweepSpec sweep_from_json_text(const std::string& text) {
  const json doc = parse_json(text, "sweep");
  check_known_keys(doc,
                   {"variable", "grid", "schemes", "n_drops", "seed",
                    "grid_in_watts", "mc_validate", "mc_samples", "omnicast",
                    "omnicast_fading_samples"},
                   "sweep");

  SweepSpec spec;
  try {
    const std::string var = doc.at("variable").get<std::string>();
    bool found = false;
    for (auto v : {SweepSpec::Variable::NAntennas, SweepSpec::Variable::DlPower,
                   SweepSpec::Variable::UlCap, SweepSpec::Variable::NGroups}) {
      if (var == variable_name(v)) {
        spec.variable = v;
        found = true;
      }
    }
    if (!found) throw InvalidArgument("unknown sweep variable: " + var);

    spec.grid = doc.at("grid").get<std::vector<double>>();
    spec.schemes.clear();
    if (doc.contains("schemes")) {
      for (const json& item : doc.at("schemes")) {
        const std::string name = item.get<std::string>();
        if (name == "all") {
          spec.schemes.assign(kAllSchemes.begin(), kAllSchemes.end());
          break;
        }
        const auto scheme = scheme_from_name(name);
        if (!scheme) throw InvalidArgument("unknown scheme: " + name);
        spec.schemes.push_back(*scheme);
      }
    } else {
      spec.schemes.assign(kAllSchemes.begin(), kAllSchemes.end());
    }
    spec.n_drops = doc.value("n_drops", 100);
    spec.seed = doc.value("seed", std::uint64_t{1});
    spec.grid_in_watts = doc.value("grid_in_watts", true);
    spec.mc_validate = doc.value("mc_validate", false);
    spec.mc_samples = doc.value("mc_samples", 10000);
    spec.omnicast = doc.value("omnicast", false);
    spec.omnicast_fading_samples = doc.value("omnicast_fading_samples", 100);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("bad sweep document: ") + e.what());
  }
  return spec;
}

SweepSpec sweep_from_file(const std::string& path) {
  return sweep_from_json_text(read_text_file(path));
}

}  // namespace mgmcast
