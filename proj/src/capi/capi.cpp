#include "morsecone.h"

#include <cstdlib>
#include <cstring>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "common/errors.hpp"
#include "core/random_pairs.hpp"
#include "morse/morse_data.hpp"
#include "spectral/scan.hpp"

using nlohmann::json;

struct mc_dataset {
  morsecone::morse_data data;
};

struct mc_scan {
  morsecone::scan_result result;
};

namespace {

thread_local std::string g_last_error;

mc_status fail(mc_status s, const std::string& what) {
  g_last_error = what;
  return s;
}

template <typename F>
mc_status guarded(F&& f) {
  try {
    f();
    return MC_OK;
  } catch (const morsecone::io_error& e) {
    return fail(MC_ERR_IO, e.what());
  } catch (const morsecone::validation_error& e) {
    return fail(MC_ERR_VALIDATION, e.what());
  } catch (const morsecone::numeric_error& e) {
    return fail(MC_ERR_NUMERIC, e.what());
  } catch (const std::exception& e) {
    return fail(MC_ERR_NUMERIC, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p != nullptr) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

mc_status require(bool ok, const char* what) {
  return ok ? MC_OK : fail(MC_ERR_VALIDATION, what);
}

json cohomology_payload(const morsecone::morse_data& d) {
  morsecone::chain_map_pair pair = morsecone::to_chain_map_pair(d);
  morsecone::graded_complex base = morsecone::base_complex(pair);
  morsecone::graded_complex cone = morsecone::mapping_cone(pair);
  morsecone::graded_ints betti = morsecone::cohomology_dims(base);
  morsecone::graded_ints cone_betti = morsecone::cohomology_dims(cone);
  morsecone::graded_ints ranks = morsecone::rank_profile(cone);

  json out;
  out["schema_version"] = 1;
  out["m"] = d.m;
  out["ell"] = d.ell;
  out["mu"] = morsecone::mu_counts(d);

  json classical = json::array();
  json cup_ranks = json::array();
  for (int k = 0; k <= d.m; ++k) {
    classical.push_back(betti.at(k));
    cup_ranks.push_back(morsecone::rank_q(pair.cone_map[static_cast<size_t>(k)]));
  }
  out["classical_betti"] = classical;
  out["cup_ranks"] = cup_ranks;

  json degrees = json::array();
  for (int k = cone.min_deg(); k <= cone.max_deg(); ++k) {
    degrees.push_back({{"degree", k},
                       {"dim", cone.dim(k)},
                       {"betti", cone_betti.at(k)},
                       {"rank", ranks.at(k)}});
  }
  out["cone_degrees"] = degrees;
  return out;
}

json corollaries_payload(const morsecone::morse_data& d) {
  morsecone::chain_map_pair pair = morsecone::to_chain_map_pair(d);
  morsecone::equality_report eq = morsecone::morse_equalities(pair);
  morsecone::inequality_report ineq = morsecone::morse_inequalities(pair);
  std::vector<morsecone::cone_decomposition> dec = morsecone::decompose_cohomology(pair);

  json out;
  out["schema_version"] = 1;

  json eq_rows = json::array();
  for (const auto& r : eq.rows)
    eq_rows.push_back({{"degree", r.degree},
                       {"rank", r.rank},
                       {"lhs", r.lhs},
                       {"rhs", r.rhs},
                       {"residue", r.lhs - r.rhs}});
  out["equalities"] = {{"holds", eq.holds}, {"rows", eq_rows}};

  json ineq_rows = json::array();
  for (const auto& r : ineq.rows)
    ineq_rows.push_back({{"degree", r.degree},
                         {"lhs", r.lhs},
                         {"rhs", r.rhs},
                         {"slack", r.slack}});
  out["inequalities"] = {{"holds", ineq.holds}, {"rows", ineq_rows}};

  json dec_rows = json::array();
  for (const auto& r : dec)
    dec_rows.push_back({{"degree", r.degree},
                        {"coker", r.coker_dim},
                        {"ker", r.ker_dim},
                        {"betti", r.coker_dim + r.ker_dim}});
  out["decomposition"] = dec_rows;
  return out;
}

morsecone::scan_config parse_scan_config(const char* config_json) {
  morsecone::scan_config cfg;
  if (config_json == nullptr || *config_json == '\0') return cfg;

  json parsed;
  try {
    parsed = json::parse(config_json);
  } catch (const json::parse_error& e) {
    throw morsecone::validation_error(std::string("config parse error: ") + e.what());
  }
  if (!parsed.is_object())
    throw morsecone::validation_error("config must be a JSON object");

  for (const auto& [key, value] : parsed.items()) {
    try {
      if (key == "builtin") {
        cfg.builtin = value.get<std::string>();
      } else if (key == "n") {
        cfg.n = value.get<int>();
      } else if (key == "T_list") {
        cfg.T_list = value.get<std::vector<double>>();
      } else if (key == "c0") {
        cfg.c0 = value.get<double>();
      } else if (key == "threshold") {
        cfg.threshold = value.get<double>();
      } else if (key == "gap_mode") {
        cfg.gap_mode = value.get<bool>();
      } else if (key == "bump_eps") {
        cfg.bump_eps = value.get<double>();
      } else if (key == "threads") {
        cfg.threads = value.get<int>();
      } else {
        throw morsecone::validation_error("unknown config key '" + key + "'");
      }
    } catch (const json::exception& e) {
      throw morsecone::validation_error("config key '" + key + "': " + e.what());
    }
  }
  return cfg;
}

}  // namespace

extern "C" {

const char* mc_version(void) { return "0.1.0"; }

const char* mc_last_error(void) { return g_last_error.c_str(); }

int mc_builtin_count(void) {
  return static_cast<int>(morsecone::builtin_names().size());
}

const char* mc_builtin_name(int i) {
  static const std::vector<std::string> names = morsecone::builtin_names();
  if (i < 0 || i >= static_cast<int>(names.size())) return nullptr;
  return names[static_cast<size_t>(i)].c_str();
}

mc_status mc_dataset_builtin(const char* name, mc_dataset** out) {
  if (mc_status s = require(name != nullptr && out != nullptr, "null argument")) return s;
  return guarded([&] { *out = new mc_dataset{morsecone::builtin_dataset(name)}; });
}

mc_status mc_dataset_load_file(const char* path, mc_dataset** out) {
  if (mc_status s = require(path != nullptr && out != nullptr, "null argument")) return s;
  return guarded([&] { *out = new mc_dataset{morsecone::load_dataset_file(path)}; });
}

mc_status mc_dataset_load_string(const char* text, mc_dataset** out) {
  if (mc_status s = require(text != nullptr && out != nullptr, "null argument")) return s;
  return guarded([&] {
    std::istringstream in(text);
    *out = new mc_dataset{morsecone::load_dataset(in, "<string>")};
  });
}

mc_status mc_dataset_save_file(const mc_dataset* d, const char* path) {
  if (mc_status s = require(d != nullptr && path != nullptr, "null argument")) return s;
  return guarded([&] { morsecone::save_dataset_file(d->data, path); });
}

void mc_dataset_free(mc_dataset* d) { delete d; }

mc_status mc_dataset_validate(const mc_dataset* d) {
  if (mc_status s = require(d != nullptr, "null argument")) return s;
  return guarded([&] { morsecone::validate(d->data); });
}

mc_status mc_cohomology_json(const mc_dataset* d, char** out_json) {
  if (mc_status s = require(d != nullptr && out_json != nullptr, "null argument")) return s;
  return guarded([&] { *out_json = dup_string(cohomology_payload(d->data).dump(2)); });
}

mc_status mc_corollaries_json(const mc_dataset* d, char** out_json) {
  if (mc_status s = require(d != nullptr && out_json != nullptr, "null argument")) return s;
  return guarded([&] { *out_json = dup_string(corollaries_payload(d->data).dump(2)); });
}

mc_status mc_random_suite_json(unsigned long long seed, int count, char** out_json) {
  if (mc_status s = require(out_json != nullptr, "null argument")) return s;
  if (mc_status s = require(count >= 0, "count must be nonnegative")) return s;
  return guarded([&] {
    std::mt19937_64 rng(seed);
    int passed = 0;
    json failures = json::array();
    for (int i = 0; i < count; ++i) {
      try {
        morsecone::chain_map_pair pair = morsecone::random_pair(rng);
        morsecone::check_pair(pair);
        morsecone::mapping_cone(pair).check();
        morsecone::equality_report eq = morsecone::morse_equalities(pair);
        morsecone::inequality_report ineq = morsecone::morse_inequalities(pair);
        morsecone::decompose_cohomology(pair);
        if (!eq.holds) {
          failures.push_back({{"index", i}, {"message", "equality residue nonzero"}});
        } else if (!ineq.holds) {
          failures.push_back({{"index", i}, {"message", "negative inequality slack"}});
        } else {
          ++passed;
        }
      } catch (const std::exception& e) {
        failures.push_back({{"index", i}, {"message", e.what()}});
      }
    }
    json out;
    out["schema_version"] = 1;
    out["seed"] = seed;
    out["count"] = count;
    out["passed"] = passed;
    out["failures"] = failures;
    *out_json = dup_string(out.dump(2));
  });
}

mc_status mc_scan_run(const char* config_json, mc_scan** out) {
  if (mc_status s = require(out != nullptr, "null argument")) return s;
  return guarded([&] {
    morsecone::scan_config cfg = parse_scan_config(config_json);
    *out = new mc_scan{morsecone::run_scan(cfg)};
  });
}

mc_status mc_scan_csv(const mc_scan* s, char** out_text) {
  if (mc_status st = require(s != nullptr && out_text != nullptr, "null argument")) return st;
  return guarded([&] {
    std::ostringstream os;
    morsecone::write_scan_csv(s->result, os);
    *out_text = dup_string(os.str());
  });
}

mc_status mc_scan_json(const mc_scan* s, char** out_text) {
  if (mc_status st = require(s != nullptr && out_text != nullptr, "null argument")) return st;
  return guarded([&] {
    std::ostringstream os;
    morsecone::write_scan_json(s->result, os);
    *out_text = dup_string(os.str());
  });
}

void mc_scan_free(mc_scan* s) { delete s; }

void mc_string_free(char* s) { std::free(s); }

}  // extern "C"
