#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spectral/gaussian.hpp"
#include "spectral/instanton.hpp"

namespace morsecone {

// Grid realization of a builtin dataset: the sampled function and constant
// form whose critical points and cup action the dataset describes.
struct grid_problem {
  periodic_grid grid;
  cochain f;
  cochain omega;
};

grid_problem make_grid_problem(const std::string& builtin, int n);

struct scan_config {
  std::string builtin = "t2_cos_dx";
  int n = 16;
  std::vector<double> T_list;
  double c0 = -1;  // < 0 means 1 + 2 max|f|
  double threshold = 1.0;
  bool gap_mode = false;
  double bump_eps = 0.48;
  int threads = 1;
};

struct scan_row {
  double T = 0;
  double S = 0;
  int degree = 0;
  int block_dim = 0;
  int zero_count = 0;
  int low_count = 0;
  double gap_ratio = 0;
  int dim_F = 0;
  int rank_next = 0;
  int cohomology = 0;
  // One slot per critical point; NaN when the point's first-slot model does
  // not live in this row's degree.
  std::vector<double> defects;
};

struct scan_result {
  scan_config config;
  double c0 = 0;
  std::vector<grid_critical_point> points;
  std::vector<scan_row> rows;  // ordered by (T, degree)
};

// Scan points are independent; with threads > 1 they run concurrently and
// merge by index, so output bytes never depend on the thread count.
scan_result run_scan(const scan_config& cfg);

void write_scan_csv(const scan_result& r, std::ostream& out);
void write_scan_json(const scan_result& r, std::ostream& out);

}  // namespace morsecone
