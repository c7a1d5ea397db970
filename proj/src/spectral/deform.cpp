#include "spectral/deform.hpp"

#include <cmath>
#include <stdexcept>

#include "common/errors.hpp"

namespace morsecone {

double deform_params::S() const { return std::exp(log_S); }
double deform_params::S_inverse() const { return std::exp(-log_S); }

deform_params schedule_at(double T, double c0) {
  if (T < 0) throw validation_error("deformation strength must be nonnegative");
  deform_params p;
  p.T = T;
  p.log_S = c0 * T;
  return p;
}

deform_params explicit_ST(double S, double T) {
  if (!(S > 0)) throw validation_error("cone scaling S must be positive");
  if (T < 0) throw validation_error("deformation strength must be nonnegative");
  deform_params p;
  p.T = T;
  p.log_S = std::log(S);
  return p;
}

double default_c0(const cochain& f) {
  if (f.degree != 0) throw validation_error("schedule constant needs a 0-cochain");
  double y0 = 0;
  for (double v : f.values) y0 = std::max(y0, std::fabs(v));
  return 1.0 + 2.0 * y0;
}

const Eigen::VectorXd& block_scaling::at(int degree) const {
  int idx = degree - lo;
  if (idx < 0 || idx >= static_cast<int>(diag.size()))
    throw validation_error("scaling degree out of range");
  return diag[static_cast<size_t>(idx)];
}

namespace {

int second_slot_degree(int k, int ell) { return k - ell + 1; }

}  // namespace

block_scaling scaling_map(const periodic_grid& g, const cochain& f, int ell,
                          const deform_params& p) {
  if (f.degree != 0) throw validation_error("scaling map needs f as a 0-cochain");
  if (static_cast<int>(f.values.size()) != g.cell_count(0))
    throw validation_error("f sample size does not match the grid");
  if (ell < 0 || ell > g.m) throw validation_error("cup degree out of range for the grid");

  double y0 = 0;
  for (double v : f.values) y0 = std::max(y0, std::fabs(v));
  if (!p.log_domain && p.T * y0 > 300.0)
    throw numeric_error("scaling overflow, enable log-domain mode");

  block_scaling s;
  s.lo = (ell == 0) ? -1 : 0;
  int hi = std::max(g.m, g.m + ell - 1);
  for (int k = s.lo; k <= hi; ++k) {
    int q = second_slot_degree(k, ell);
    int first = (k >= 0 && k <= g.m) ? g.cell_count(k) : 0;
    int second = (q >= 0 && q <= g.m) ? g.cell_count(q) : 0;
    Eigen::VectorXd d(first + second);
    if (first > 0) {
      Eigen::VectorXd fa = anchor_vertex_values(g, k, f.values);
      for (int i = 0; i < first; ++i) d[i] = std::exp(p.T * fa[i]);
    }
    if (second > 0) {
      Eigen::VectorXd fa = anchor_vertex_values(g, q, f.values);
      for (int i = 0; i < second; ++i) d[first + i] = std::exp(p.T * fa[i] - p.log_S);
    }
    s.diag.push_back(std::move(d));
  }
  return s;
}

block_scaling inverse(const block_scaling& s) {
  block_scaling r;
  r.lo = s.lo;
  for (const auto& d : s.diag) r.diag.push_back(d.cwiseInverse());
  return r;
}

}  // namespace morsecone
