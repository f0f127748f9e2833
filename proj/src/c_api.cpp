#include "mgmcast.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "mgmcast/channel.hpp"
#include "mgmcast/errors.hpp"
#include "mgmcast/experiments.hpp"
#include "mgmcast/mc_validation.hpp"
#include "mgmcast/mmf_solvers.hpp"
#include "mgmcast/omnicast.hpp"
#include "mgmcast/system_config.hpp"

using namespace mgmcast;

extern "C" {

struct mgm_config {
  SystemConfig rep;
};
struct mgm_profile {
  FadingProfile rep;
};
struct mgm_solution {
  MmfSolution rep;
};
struct mgm_table {
  ResultTable rep;
};

}  // extern "C"

namespace {

thread_local std::string t_last_error = "ok";

mgm_status fail(mgm_status code, const std::string& message) {
  t_last_error = message;
  return code;
}

/// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
mgm_status guarded(Fn&& fn) {
  try {
    fn();
    return MGM_OK;
  } catch (const InvalidArgument& e) {
    return fail(MGM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const InfeasibleError& e) {
    return fail(MGM_ERR_INFEASIBLE, e.what());
  } catch (const SingularMatrixError& e) {
    return fail(MGM_ERR_SINGULAR, e.what());
  } catch (const IoError& e) {
    return fail(MGM_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(MGM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MGM_ERR_INTERNAL, "unknown failure");
  }
}

mgm_status require(bool ok, const char* message) {
  return ok ? MGM_OK : fail(MGM_ERR_INVALID_ARGUMENT, message);
}

SchemeId to_scheme(mgm_scheme s) { return static_cast<SchemeId>(s); }

mgm_status copy_vector(const std::vector<double>& src, double* out, size_t len,
                       const char* what) {
  if (out == nullptr || len < src.size()) {
    return fail(MGM_ERR_INVALID_ARGUMENT,
                std::string(what) + ": output buffer too small");
  }
  std::memcpy(out, src.data(), src.size() * sizeof(double));
  return MGM_OK;
}

}  // namespace

extern "C" {

const char* mgm_last_error(void) { return t_last_error.c_str(); }

const char* mgm_scheme_name(mgm_scheme scheme) {
  return scheme_name(to_scheme(scheme)).data();
}

mgm_status mgm_scheme_parse(const char* name, mgm_scheme* out) {
  if (mgm_status st = require(name != nullptr && out != nullptr,
                              "mgm_scheme_parse: null argument");
      st != MGM_OK) {
    return st;
  }
  const auto scheme = scheme_from_name(name);
  if (!scheme) {
    return fail(MGM_ERR_INVALID_ARGUMENT,
                std::string("unknown scheme name: ") + name);
  }
  *out = static_cast<mgm_scheme>(scheme_index(*scheme));
  return MGM_OK;
}

mgm_status mgm_config_from_json(const char* json_text, mgm_config** out) {
  if (mgm_status st = require(json_text != nullptr && out != nullptr,
                              "mgm_config_from_json: null argument");
      st != MGM_OK) {
    return st;
  }
  return guarded([&] {
    *out = new mgm_config{config_from_json_text(json_text)};
  });
}

mgm_status mgm_config_from_file(const char* path, mgm_config** out) {
  if (mgm_status st = require(path != nullptr && out != nullptr,
                              "mgm_config_from_file: null argument");
      st != MGM_OK) {
    return st;
  }
  return guarded([&] { *out = new mgm_config{config_from_file(path)}; });
}

void mgm_config_free(mgm_config* config) { delete config; }

int mgm_config_n_antennas(const mgm_config* config) {
  return config ? config->rep.n_antennas : 0;
}
int mgm_config_n_groups(const mgm_config* config) {
  return config ? config->rep.n_groups() : 0;
}
int mgm_config_total_users(const mgm_config* config) {
  return config ? config->rep.total_users() : 0;
}
int mgm_config_coherence_symbols(const mgm_config* config) {
  return config ? config->rep.coherence_symbols : 0;
}
double mgm_config_dl_power(const mgm_config* config) {
  return config ? config->rep.dl_power_budget : 0.0;
}

double mgm_normalize_power(double p_watts, double noise_psd_dbm_per_hz,
                           double bw_hz) {
  return normalize_power(p_watts, noise_psd_dbm_per_hz, bw_hz);
}

mgm_status mgm_scheme_feasible(const mgm_config* config, mgm_scheme scheme,
                               int* feasible, char* reason, size_t reason_len) {
  if (mgm_status st = require(config != nullptr && feasible != nullptr,
                              "mgm_scheme_feasible: null argument");
      st != MGM_OK) {
    return st;
  }
  return guarded([&] {
    const Feasibility feas = scheme_feasible(to_scheme(scheme), config->rep);
    *feasible = feas.ok ? 1 : 0;
    if (reason != nullptr && reason_len > 0) {
      std::strncpy(reason, feas.reason.c_str(), reason_len - 1);
      reason[reason_len - 1] = '\0';
    }
  });
}

mgm_status mgm_drop_users(const mgm_config* config, uint64_t seed,
                          mgm_profile** out) {
  if (mgm_status st = require(config != nullptr && out != nullptr,
                              "mgm_drop_users: null argument");
      st != MGM_OK) {
    return st;
  }
  return guarded([&] {
    *out = new mgm_profile{drop_users(config->rep, seed)};
  });
}

void mgm_profile_free(mgm_profile* profile) { delete profile; }

size_t mgm_profile_user_count(const mgm_profile* profile) {
  return profile ? profile->rep.betas.size() : 0;
}

mgm_status mgm_profile_betas(const mgm_profile* profile, double* out,
                             size_t len) {
  if (mgm_status st =
          require(profile != nullptr, "mgm_profile_betas: null profile");
      st != MGM_OK) {
    return st;
  }
  return copy_vector(profile->rep.betas, out, len, "mgm_profile_betas");
}

mgm_status mgm_solve_mmf(const mgm_config* config, const mgm_profile* profile,
                         mgm_scheme scheme, int tau_p, mgm_solution** out) {
  if (mgm_status st =
          require(config != nullptr && profile != nullptr && out != nullptr,
                  "mgm_solve_mmf: null argument");
      st != MGM_OK) {
    return st;
  }
  return guarded([&] {
    *out = new mgm_solution{
        solve_mmf(to_scheme(scheme), config->rep, profile->rep.betas, tau_p)};
  });
}

mgm_status mgm_optimize_pilot_length(const mgm_config* config,
                                     const mgm_profile* profile,
                                     mgm_scheme scheme, mgm_solution** out) {
  if (mgm_status st =
          require(config != nullptr && profile != nullptr && out != nullptr,
                  "mgm_optimize_pilot_length: null argument");
      st != MGM_OK) {
    return st;
  }
  return guarded([&] {
    *out = new mgm_solution{optimize_pilot_length(to_scheme(scheme),
                                                  config->rep,
                                                  profile->rep.betas)};
  });
}

void mgm_solution_free(mgm_solution* solution) { delete solution; }

double mgm_solution_min_se(const mgm_solution* solution) {
  return solution ? solution->rep.min_se : 0.0;
}
double mgm_solution_common_sinr(const mgm_solution* solution) {
  return solution ? solution->rep.common_sinr : 0.0;
}
int mgm_solution_tau_p(const mgm_solution* solution) {
  return solution ? solution->rep.tau_p : 0;
}
size_t mgm_solution_dl_power_count(const mgm_solution* solution) {
  return solution ? solution->rep.dl_powers.size() : 0;
}

mgm_status mgm_solution_dl_powers(const mgm_solution* solution, double* out,
                                  size_t len) {
  if (mgm_status st =
          require(solution != nullptr, "mgm_solution_dl_powers: null solution");
      st != MGM_OK) {
    return st;
  }
  return copy_vector(solution->rep.dl_powers, out, len, "mgm_solution_dl_powers");
}

mgm_status mgm_solution_ul_powers(const mgm_solution* solution, double* out,
                                  size_t len) {
  if (mgm_status st =
          require(solution != nullptr, "mgm_solution_ul_powers: null solution");
      st != MGM_OK) {
    return st;
  }
  return copy_vector(solution->rep.ul_powers, out, len, "mgm_solution_ul_powers");
}

mgm_status mgm_validate_bound(const mgm_config* config,
                              const mgm_profile* profile,
                              const mgm_solution* solution, int n_samples,
                              uint64_t seed, double* max_rel_dev,
                              int* n_flagged) {
  if (mgm_status st = require(
          config != nullptr && profile != nullptr && solution != nullptr,
          "mgm_validate_bound: null argument");
      st != MGM_OK) {
    return st;
  }
  return guarded([&] {
    const BoundComparison cmp =
        compare_bound(solution->rep.scheme, config->rep, profile->rep,
                      solution->rep, n_samples, seed);
    if (max_rel_dev != nullptr) *max_rel_dev = cmp.max_rel_deviation;
    if (n_flagged != nullptr) *n_flagged = cmp.n_flagged;
  });
}

mgm_status mgm_omnicast_se(const mgm_config* config, int n_drops,
                           int n_fading_samples, uint64_t seed, double* se,
                           double* std_error) {
  if (mgm_status st = require(config != nullptr && se != nullptr,
                              "mgm_omnicast_se: null argument");
      st != MGM_OK) {
    return st;
  }
  return guarded([&] {
    const OmnicastResult result =
        omnicast_se(config->rep, n_drops, n_fading_samples, seed);
    *se = result.se;
    if (std_error != nullptr) *std_error = result.std_error;
  });
}

mgm_status mgm_run_sweep_json(const mgm_config* config, const char* sweep_json,
                              mgm_table** out) {
  if (mgm_status st =
          require(config != nullptr && sweep_json != nullptr && out != nullptr,
                  "mgm_run_sweep_json: null argument");
      st != MGM_OK) {
    return st;
  }
  return guarded([&] {
    const SweepSpec spec = sweep_from_json_text(sweep_json);
    *out = new mgm_table{run_sweep(spec, config->rep)};
  });
}

void mgm_table_free(mgm_table* table) { delete table; }

mgm_status mgm_table_write(const mgm_table* table, const char* path,
                           const char* format) {
  if (mgm_status st =
          require(table != nullptr && path != nullptr && format != nullptr,
                  "mgm_table_write: null argument");
      st != MGM_OK) {
    return st;
  }
  return guarded([&] { emit_results(table->rep, path, format); });
}

mgm_status mgm_table_to_string(const mgm_table* table, const char* format,
                               char** out) {
  if (mgm_status st =
          require(table != nullptr && format != nullptr && out != nullptr,
                  "mgm_table_to_string: null argument");
      st != MGM_OK) {
    return st;
  }
  return guarded([&] {
    const std::string text = table_to_string(table->rep, format);
    char* buffer = static_cast<char*>(std::malloc(text.size() + 1));
    if (buffer == nullptr) throw std::bad_alloc();
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    *out = buffer;
  });
}

void mgm_string_free(char* text) { std::free(text); }

mgm_status mgm_recommend(const mgm_config* config, const mgm_profile* profile,
                         mgm_scheme* best, double* best_se, double* margin,
                         double* per_scheme_se) {
  if (mgm_status st =
          require(config != nullptr && profile != nullptr && best != nullptr,
                  "mgm_recommend: null argument");
      st != MGM_OK) {
    return st;
  }
  return guarded([&] {
    const Recommendation rec = recommend_scheme(config->rep, profile->rep);
    *best = static_cast<mgm_scheme>(scheme_index(rec.best_scheme));
    if (best_se != nullptr) {
      *best_se = rec.per_scheme_se[scheme_index(rec.best_scheme)];
    }
    if (margin != nullptr) *margin = rec.margin;
    if (per_scheme_se != nullptr) {
      for (int i = 0; i < 6; ++i) per_scheme_se[i] = rec.per_scheme_se[i];
    }
  });
}

}  // extern "C"
