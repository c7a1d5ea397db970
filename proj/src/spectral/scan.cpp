#include "spectral/scan.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "common/errors.hpp"

namespace morsecone {

namespace {

const double pi = 3.14159265358979323846;

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<scan_row> scan_point(const grid_problem& prob,
                                 const std::vector<grid_critical_point>& points,
                                 const scan_config& cfg, double c0, double T) {
  deform_params params = schedule_at(T, c0);
  cone_operator cone = make_cone_operator(prob.grid, prob.f, prob.omega, params);
  const int lo = cone.layout.lo(), hi = cone.layout.hi();

  std::vector<spectral_result> spectra;
  for (int k = lo; k <= hi; ++k) {
    spectral_result r = dense_spectrum(dirac_laplacian(cone, k), k);
    if (cfg.gap_mode)
      cluster_split_gap(r);
    else
      cluster_split(r, cfg.threshold);
    spectra.push_back(std::move(r));
  }
  instanton_result inst = instanton_complex(cone, spectra);

  std::vector<scan_row> rows;
  for (int k = lo; k <= hi; ++k) {
    const spectral_result& sp = spectra[static_cast<size_t>(k - lo)];
    scan_row row;
    row.T = T;
    row.S = params.S();
    row.degree = k;
    row.block_dim = cone.layout.dim(k);
    row.zero_count = zero_count(sp);
    row.low_count = sp.low_count;
    row.gap_ratio = sp.gap_ratio;
    row.dim_F = inst.at(k).dim_F;
    row.rank_next = inst.at(k).rank_next;
    row.cohomology = inst.at(k).cohomology;
    row.defects.assign(points.size(), std::numeric_limits<double>::quiet_NaN());
    for (size_t pi_ = 0; pi_ < points.size(); ++pi_) {
      if (points[pi_].index != k) continue;
      block_cochain xi = gaussian_model_cochain(cone, points[pi_], T, 0, cfg.bump_eps);
      row.defects[pi_] = projection_defect(sp, xi.values);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

grid_problem make_grid_problem(const std::string& builtin, int n) {
  grid_problem p;
  if (builtin == "t2_cos_dx" || builtin == "t2_cos_zero") {
    p.grid = make_grid(2, n);
    p.f = sample_zero_form(p.grid, [](double x, double y) {
      return std::cos(2 * pi * x) + std::cos(2 * pi * y);
    });
    p.omega = sample_form(p.grid, 1,
                          builtin == "t2_cos_dx" ? std::vector<double>{1.0, 0.0}
                                                 : std::vector<double>{0.0, 0.0});
    return p;
  }
  throw validation_error("no periodic grid realization for dataset '" + builtin + "'");
}

scan_result run_scan(const scan_config& cfg) {
  if (cfg.T_list.empty())
    throw validation_error("spectral scan needs a nonempty list of T values");
  grid_problem prob = make_grid_problem(cfg.builtin, cfg.n);

  scan_result out;
  out.config = cfg;
  out.c0 = cfg.c0 < 0 ? default_c0(prob.f) : cfg.c0;
  out.points = find_critical_points(prob.grid, prob.f);

  std::vector<std::vector<scan_row>> parts(cfg.T_list.size());
  int threads = std::max(1, cfg.threads);
  if (threads <= 1) {
    for (size_t i = 0; i < cfg.T_list.size(); ++i)
      parts[i] = scan_point(prob, out.points, cfg, out.c0, cfg.T_list[i]);
  } else {
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    std::mutex err_mutex;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < cfg.T_list.size();
             i = next.fetch_add(1)) {
          try {
            parts[i] = scan_point(prob, out.points, cfg, out.c0, cfg.T_list[i]);
          } catch (...) {
            std::lock_guard<std::mutex> lock(err_mutex);
            if (!first_error) first_error = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }
  for (auto& part : parts)
    for (auto& row : part) out.rows.push_back(std::move(row));
  return out;
}

void write_scan_csv(const scan_result& r, std::ostream& out) {
  out << "T,S,degree,block_dim,zero_count,low_count,gap_ratio,dim_F,rank_next,cohomology";
  for (size_t i = 0; i < r.points.size(); ++i) out << ",defect_p" << i;
  out << "\n";
  for (const auto& row : r.rows) {
    out << fmt12(row.T) << "," << fmt12(row.S) << "," << row.degree << ","
        << row.block_dim << "," << row.zero_count << "," << row.low_count << ",";
    if (std::isinf(row.gap_ratio))
      out << "inf";
    else
      out << fmt12(row.gap_ratio);
    out << "," << row.dim_F << "," << row.rank_next << "," << row.cohomology;
    for (double d : row.defects) {
      out << ",";
      if (!std::isnan(d)) out << fmt12(d);
    }
    out << "\n";
  }
}

void write_scan_json(const scan_result& r, std::ostream& out) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["dataset"] = r.config.builtin;
  j["n"] = r.config.n;
  j["c0"] = r.c0;
  j["threshold"] = r.config.threshold;
  j["cluster_mode"] = r.config.gap_mode ? "gap" : "threshold";
  j["critical_points"] = nlohmann::json::array();
  for (const auto& p : r.points)
    j["critical_points"].push_back(
        {{"i", p.i}, {"j", p.j}, {"index", p.index}, {"value", p.value}});
  j["rows"] = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json jr{{"T", row.T},
                      {"S", row.S},
                      {"degree", row.degree},
                      {"block_dim", row.block_dim},
                      {"zero_count", row.zero_count},
                      {"low_count", row.low_count},
                      {"dim_F", row.dim_F},
                      {"rank_next", row.rank_next},
                      {"cohomology", row.cohomology}};
    if (std::isinf(row.gap_ratio))
      jr["gap_ratio"] = "inf";
    else
      jr["gap_ratio"] = row.gap_ratio;
    jr["defects"] = nlohmann::json::array();
    for (double d : row.defects) {
      if (std::isnan(d))
        jr["defects"].push_back(nullptr);
      else
        jr["defects"].push_back(d);
    }
    j["rows"].push_back(jr);
  }
  out << j.dump(2) << "\n";
}

}  // namespace morsecone
