#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "morsecone.h"

using nlohmann::json;

namespace {

int exit_code(mc_status s) { return static_cast<int>(s); }

int report_error(mc_status s) {
  std::fprintf(stderr, "error: %s\n", mc_last_error());
  return exit_code(s);
}

bool is_builtin(const std::string& name) {
  for (int i = 0; i < mc_builtin_count(); ++i)
    if (name == mc_builtin_name(i)) return true;
  return false;
}

// Dataset argument: a builtin name, or a path to a dataset file.
mc_status open_dataset(const std::string& arg, mc_dataset** out) {
  if (is_builtin(arg)) return mc_dataset_builtin(arg.c_str(), out);
  return mc_dataset_load_file(arg.c_str(), out);
}

struct owned_string {
  char* ptr = nullptr;
  ~owned_string() { mc_string_free(ptr); }
  std::string str() const { return ptr == nullptr ? std::string() : std::string(ptr); }
};

int write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::fputs(text.c_str(), stdout);
    return 0;
  }
  std::ofstream out(path);
  if (!out) {
    std::fprintf(stderr, "error: cannot open '%s' for writing\n", path.c_str());
    return exit_code(MC_ERR_IO);
  }
  out << text;
  return 0;
}

int cmd_validate(const std::string& dataset) {
  mc_dataset* d = nullptr;
  if (mc_status s = open_dataset(dataset, &d)) return report_error(s);
  mc_status s = mc_dataset_validate(d);
  if (s != MC_OK) {
    mc_dataset_free(d);
    return report_error(s);
  }

  owned_string payload;
  s = mc_cohomology_json(d, &payload.ptr);
  mc_dataset_free(d);
  if (s != MC_OK) return report_error(s);

  json j = json::parse(payload.str());
  std::printf("%s: valid\n", dataset.c_str());
  std::printf("index  mu\n");
  const auto& mu = j.at("mu");
  for (size_t k = 0; k < mu.size(); ++k)
    std::printf("%-5zu  %d\n", k, mu[k].get<int>());
  return 0;
}

int cmd_cohomology(const std::string& dataset, const std::string& json_path) {
  mc_dataset* d = nullptr;
  if (mc_status s = open_dataset(dataset, &d)) return report_error(s);
  mc_status s = mc_dataset_validate(d);
  if (s == MC_OK) {
    owned_string payload;
    s = mc_cohomology_json(d, &payload.ptr);
    mc_dataset_free(d);
    if (s != MC_OK) return report_error(s);

    json j = json::parse(payload.str());
    auto mu_at = [&](int k) {
      const auto& mu = j.at("mu");
      return (k < 0 || k >= static_cast<int>(mu.size())) ? 0 : mu[static_cast<size_t>(k)].get<int>();
    };
    auto arr_at = [&](const char* key, int k) {
      const auto& a = j.at(key);
      return (k < 0 || k >= static_cast<int>(a.size())) ? 0 : a[static_cast<size_t>(k)].get<int>();
    };
    std::printf("degree  mu  b_classical  cup_rank  cone_dim  b_omega  rank\n");
    for (const auto& row : j.at("cone_degrees")) {
      int k = row.at("degree").get<int>();
      std::printf("%-6d  %-2d  %-11d  %-8d  %-8d  %-7d  %d\n", k, mu_at(k),
                  arr_at("classical_betti", k), arr_at("cup_ranks", k),
                  row.at("dim").get<int>(), row.at("betti").get<int>(),
                  row.at("rank").get<int>());
    }
    if (!json_path.empty()) return write_text(json_path, payload.str() + "\n");
    return 0;
  }
  mc_dataset_free(d);
  return report_error(s);
}

int cmd_corollaries(const std::string& dataset, const std::string& json_path) {
  mc_dataset* d = nullptr;
  if (mc_status s = open_dataset(dataset, &d)) return report_error(s);
  mc_status s = mc_dataset_validate(d);
  if (s != MC_OK) {
    mc_dataset_free(d);
    return report_error(s);
  }
  owned_string payload;
  s = mc_corollaries_json(d, &payload.ptr);
  mc_dataset_free(d);
  if (s != MC_OK) return report_error(s);

  json j = json::parse(payload.str());
  std::printf("equalities (residue must be 0):\n");
  std::printf("degree  rank  lhs  rhs  residue\n");
  for (const auto& row : j.at("equalities").at("rows"))
    std::printf("%-6d  %-4d  %-3ld  %-3ld  %ld\n", row.at("degree").get<int>(),
                row.at("rank").get<int>(), row.at("lhs").get<long>(),
                row.at("rhs").get<long>(), row.at("residue").get<long>());
  std::printf("inequalities (slack must be >= 0):\n");
  std::printf("degree  lhs  rhs  slack\n");
  for (const auto& row : j.at("inequalities").at("rows"))
    std::printf("%-6d  %-3ld  %-3ld  %ld\n", row.at("degree").get<int>(),
                row.at("lhs").get<long>(), row.at("rhs").get<long>(),
                row.at("slack").get<long>());
  std::printf("decomposition (coker + ker = betti):\n");
  std::printf("degree  coker  ker  betti\n");
  for (const auto& row : j.at("decomposition"))
    std::printf("%-6d  %-5d  %-3d  %d\n", row.at("degree").get<int>(),
                row.at("coker").get<int>(), row.at("ker").get<int>(),
                row.at("betti").get<int>());

  bool holds = j.at("equalities").at("holds").get<bool>() &&
               j.at("inequalities").at("holds").get<bool>();
  std::printf(holds ? "all identities hold\n" : "IDENTITY VIOLATION\n");
  int rc = 0;
  if (!json_path.empty()) rc = write_text(json_path, payload.str() + "\n");
  if (!holds) {
    std::fprintf(stderr, "error: equality or inequality violated on a valid dataset\n");
    return exit_code(MC_ERR_NUMERIC);
  }
  return rc;
}

int cmd_random(unsigned long long seed, int count, const std::string& json_path) {
  owned_string payload;
  if (mc_status s = mc_random_suite_json(seed, count, &payload.ptr)) return report_error(s);
  json j = json::parse(payload.str());
  int passed = j.at("passed").get<int>();
  std::printf("random suite: %d/%d passed (seed %llu)\n", passed, count, seed);
  for (const auto& f : j.at("failures"))
    std::printf("  index %d: %s\n", f.at("index").get<int>(),
                f.at("message").get<std::string>().c_str());
  int rc = 0;
  if (!json_path.empty()) rc = write_text(json_path, payload.str() + "\n");
  if (passed != count) {
    std::fprintf(stderr, "error: random suite found violations\n");
    return exit_code(MC_ERR_NUMERIC);
  }
  return rc;
}

struct spectrum_options {
  std::string config_path;
  std::string builtin = "t2_cos_dx";
  int n = 16;
  std::vector<double> T_list;
  double c0 = -1;
  double threshold = 1.0;
  bool gap_mode = false;
  double bump_eps = 0.48;
  std::string csv_path = "-";
  std::string json_path;
};

// Layered config: file values first, then every flag the user actually
// passed, then the thread count from the environment.
int build_scan_config(const spectrum_options& opt, const CLI::App* cmd, json& cfg) {
  cfg = json::object();
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) {
      std::fprintf(stderr, "error: cannot read config '%s'\n", opt.config_path.c_str());
      return exit_code(MC_ERR_IO);
    }
    try {
      in >> cfg;
    } catch (const json::parse_error& e) {
      std::fprintf(stderr, "error: config parse error: %s\n", e.what());
      return exit_code(MC_ERR_VALIDATION);
    }
    if (!cfg.is_object()) {
      std::fprintf(stderr, "error: config must be a JSON object\n");
      return exit_code(MC_ERR_VALIDATION);
    }
  }
  if (cmd->count("--builtin") > 0) cfg["builtin"] = opt.builtin;
  if (cmd->count("--n") > 0) cfg["n"] = opt.n;
  if (cmd->count("--T") > 0) cfg["T_list"] = opt.T_list;
  if (cmd->count("--c0") > 0) cfg["c0"] = opt.c0;
  if (cmd->count("--threshold") > 0) cfg["threshold"] = opt.threshold;
  if (cmd->count("--gap-mode") > 0) cfg["gap_mode"] = opt.gap_mode;
  if (cmd->count("--bump-eps") > 0) cfg["bump_eps"] = opt.bump_eps;
  if (!cfg.contains("builtin")) cfg["builtin"] = opt.builtin;
  if (!cfg.contains("n")) cfg["n"] = opt.n;
  if (!cfg.contains("T_list")) cfg["T_list"] = std::vector<double>{4, 6, 8, 10, 12};

  if (const char* env = std::getenv("MORSECONE_THREADS")) {
    char* end = nullptr;
    long threads = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || threads < 1) {
      std::fprintf(stderr, "error: MORSECONE_THREADS must be a positive integer\n");
      return exit_code(MC_ERR_VALIDATION);
    }
    cfg["threads"] = static_cast<int>(threads);
  }
  return 0;
}

int cmd_spectrum(const spectrum_options& opt, const CLI::App* cmd) {
  json cfg;
  if (int rc = build_scan_config(opt, cmd, cfg)) return rc;

  mc_scan* scan = nullptr;
  if (mc_status s = mc_scan_run(cfg.dump().c_str(), &scan)) return report_error(s);

  int rc = 0;
  owned_string csv;
  if (mc_status s = mc_scan_csv(scan, &csv.ptr)) {
    mc_scan_free(scan);
    return report_error(s);
  }
  rc = write_text(opt.csv_path, csv.str());

  if (rc == 0 && !opt.json_path.empty()) {
    owned_string js;
    if (mc_status s = mc_scan_json(scan, &js.ptr)) {
      mc_scan_free(scan);
      return report_error(s);
    }
    rc = write_text(opt.json_path, js.str());
  }
  mc_scan_free(scan);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mapping cone Morse theory: exact combinatorial complexes and "
               "spectral grid runs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mc_version()));

  std::string dataset, json_path;
  unsigned long long seed = 1;
  int random_count = 0;

  CLI::App* validate = app.add_subcommand("validate", "check a dataset's exact structure");
  validate->add_option("dataset", dataset, "builtin name or dataset file")->required();

  CLI::App* cohomology =
      app.add_subcommand("cohomology", "point counts, Betti numbers and ranks per degree");
  cohomology->add_option("dataset", dataset, "builtin name or dataset file")->required();
  cohomology->add_option("--json", json_path, "write the JSON report to this path ('-' for stdout)");

  CLI::App* corollaries =
      app.add_subcommand("corollaries", "equalities, inequalities and the decomposition");
  corollaries->add_option("dataset", dataset, "builtin name or dataset file");
  corollaries->add_option("--json", json_path, "write the JSON report to this path ('-' for stdout)");
  corollaries->add_option("--random", random_count, "run the checks on this many generated datasets");
  corollaries->add_option("--seed", seed, "seed for --random");

  spectrum_options spec_opt;
  CLI::App* spectrum = app.add_subcommand("spectrum", "deformed Laplacian scan over a T schedule");
  spectrum->add_option("--config", spec_opt.config_path, "JSON config file; explicit flags win");
  spectrum->add_option("--builtin", spec_opt.builtin, "grid realization to scan");
  spectrum->add_option("--n", spec_opt.n, "grid resolution per axis");
  spectrum->add_option("--T", spec_opt.T_list, "deformation strengths to scan");
  spectrum->add_option("--c0", spec_opt.c0, "schedule constant (default 1 + 2 max|f|)");
  spectrum->add_option("--threshold", spec_opt.threshold, "low cluster eigenvalue threshold");
  spectrum->add_flag("--gap-mode", spec_opt.gap_mode, "split clusters at the largest spectral jump");
  spectrum->add_option("--bump-eps", spec_opt.bump_eps, "model form cutoff radius");
  spectrum->add_option("--csv", spec_opt.csv_path, "CSV output path ('-' for stdout)");
  spectrum->add_option("--json", spec_opt.json_path, "JSON output path ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) return cmd_validate(dataset);
  if (cohomology->parsed()) return cmd_cohomology(dataset, json_path);
  if (corollaries->parsed()) {
    if (random_count > 0) return cmd_random(seed, random_count, json_path);
    if (dataset.empty()) {
      std::fprintf(stderr, "error: corollaries needs a dataset or --random\n");
      return exit_code(MC_ERR_VALIDATION);
    }
    return cmd_corollaries(dataset, json_path);
  }
  if (spectrum->parsed()) return cmd_spectrum(spec_opt, spectrum);
  return 0;
}
