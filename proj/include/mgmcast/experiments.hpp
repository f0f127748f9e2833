#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mgmcast/channel.hpp"
#include "mgmcast/scheme.hpp"
#include "mgmcast/system_config.hpp"

namespace mgmcast {

/// One sweep: vary a single scenario parameter over a grid, averaging the
/// optimized minimum SE over independent user drops.
struct SweepSpec {
  enum class Variable { NAntennas, DlPower, UlCap, NGroups };

  Variable variable = Variable::NAntennas;
  std::vector<double> grid;       // ascending
  std::vector<SchemeId> schemes;  // evaluated in enum order
  int n_drops = 100;
  std::uint64_t seed = 1;
  bool grid_in_watts = true;  // for the power variables
  bool mc_validate = false;
  int mc_samples = 10000;
  bool omnicast = false;
  int omnicast_fading_samples = 100;
};

const char* variable_name(SweepSpec::Variable v);

struct SweepRow {
  std::string grid_variable;
  double grid_value = 0.0;
  SchemeId scheme;
  // Empty when the scheme is infeasible at this grid point (emitted as an
  // explicit NA sentinel, never as zero).
  std::optional<double> mean_min_se;
  std::optional<double> std_min_se;
  std::optional<double> mean_tau_star;
  double feasible_fraction = 0.0;
  std::optional<double> mc_rel_dev;
  std::optional<double> omnicast_se;
};

struct ResultTable {
  bool has_mc = false;
  bool has_omni = false;
  std::vector<SweepRow> rows;
};

/// Runs the sweep. Drop d reuses the same user placement across all schemes
/// of a grid point; everything is a pure function of (spec, config, seed).
ResultTable run_sweep(const SweepSpec& spec, const SystemConfig& config);

/// Best scheme for one fading profile after per-scheme pilot optimization.
struct Recommendation {
  SchemeId best_scheme;
  std::array<double, 6> per_scheme_se;  // indexed by scheme, NaN if infeasible
  std::array<bool, 6> feasible;
  double margin = 0.0;  // best minus second-best feasible SE
};

Recommendation recommend_scheme(const SystemConfig& config,
                                const FadingProfile& profile);

void emit_csv(const ResultTable& table, std::ostream& out);
void emit_json(const ResultTable& table, std::ostream& out);
std::string table_to_string(const ResultTable& table, const std::string& format);

/// Writes the table to a file; format is "csv" or "json".
void emit_results(const ResultTable& table, const std::string& path,
                  const std::string& format);

// Flat JSON document parsing. Powers are given in watts and normalized
// against the configured noise floor unless "powers_in_watts" is false.
SystemConfig config_from_json_text(const std::string& text);
SystemConfig config_from_file(const std::string& path);
SweepSpec sweep_from_json_text(const std::string& text);
SweepSpec sweep_from_file(const std::string& path);

}  // namespace mgmcast
