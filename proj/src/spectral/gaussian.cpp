#include "spectral/gaussian.hpp"

#include <cmath>

#include "common/errors.hpp"
#include "common/tolerances.hpp"

namespace morsecone {

namespace {

const double pi = 3.14159265358979323846;

double f_at(const periodic_grid& g, const cochain& f, int i, int j) {
  return f.values[static_cast<size_t>(g.vertex_id(i, j))];
}

// Signed wrapped offset in [-1/2, 1/2).
double wrap_offset(double x) {
  double y = x - std::floor(x);
  return y >= 0.5 ? y - 1.0 : y;
}

double bump(double r, double eps) {
  double inner = eps / 4, outer = eps / 2;
  if (r <= inner) return 1.0;
  if (r >= outer) return 0.0;
  return 0.5 * (1.0 + std::cos(pi * (r - inner) / (outer - inner)));
}

}  // namespace

std::vector<grid_critical_point> find_critical_points(const periodic_grid& g,
                                                      const cochain& f) {
  if (f.degree != 0 || static_cast<int>(f.values.size()) != g.cell_count(0))
    throw validation_error("critical point search needs f sampled on vertices");
  std::vector<grid_critical_point> out;
  int nj = (g.m == 2) ? g.n : 1;
  for (int j = 0; j < nj; ++j) {
    for (int i = 0; i < g.n; ++i) {
      double c = f_at(g, f, i, j);
      grid_critical_point p;
      p.i = i;
      p.j = j;
      p.value = c;
      bool critical = true;
      for (int axis = 0; axis < g.m; ++axis) {
        double plus = (axis == 0) ? f_at(g, f, i + 1, j) : f_at(g, f, i, j + 1);
        double minus = (axis == 0) ? f_at(g, f, i - 1, j) : f_at(g, f, i, j - 1);
        if (c > plus && c > minus) {
          p.negative_axis[axis] = true;
          ++p.index;
        } else if (!(c < plus && c < minus)) {
          critical = false;
          break;
        }
      }
      if (critical) out.push_back(p);
    }
  }
  return out;
}

block_cochain gaussian_model_cochain(const cone_operator& cone,
                                     const grid_critical_point& p, double T,
                                     int slot, double eps) {
  const periodic_grid& g = cone.grid;
  if (eps > 0.5) throw validation_error("eps too large: bump would cover more than half the torus");
  if (slot != 0 && slot != 1) throw validation_error("slot must be 0 or 1");
  const int k = p.index;
  const int ell = cone.layout.ell;
  const int degree = (slot == 0) ? k : k + ell - 1;
  if (degree < cone.layout.lo() || degree > cone.layout.hi())
    throw validation_error("model cochain degree outside the block window");
  if ((slot == 0 && cone.layout.first_dim(degree) != g.cell_count(k)) ||
      (slot == 1 && cone.layout.second_dim(degree) != g.cell_count(k)))
    throw validation_error("model cochain slot is empty at this degree");

  // Hessian eigenvalue per axis from the second difference at the point.
  double lambda[2] = {0, 0};
  for (int axis = 0; axis < g.m; ++axis) {
    double plus = (axis == 0) ? f_at(g, cone.f, p.i + 1, p.j)
                              : f_at(g, cone.f, p.i, p.j + 1);
    double minus = (axis == 0) ? f_at(g, cone.f, p.i - 1, p.j)
                               : f_at(g, cone.f, p.i, p.j - 1);
    lambda[axis] = std::fabs(plus - 2 * f_at(g, cone.f, p.i, p.j) + minus) / (g.h * g.h);
  }

  const double px = g.x_of(p.i), py = g.x_of(p.j);
  Eigen::VectorXd form = Eigen::VectorXd::Zero(g.cell_count(k));
  for (int id = 0; id < g.cell_count(k); ++id) {
    if (k == 1 && (g.edge_axis(id) == 0) != p.negative_axis[0]) continue;
    int ci, cj;
    g.anchor_of(k, id, ci, cj);
    // Displacement of the cell anchor, wrapped around the torus. The
    // deformation weights a cell by the Morse value at its anchor vertex,
    // so the true localized eigenvectors follow anchor displacement, not
    // the cell midpoint.
    double dx = wrap_offset(g.x_of(ci) - px);
    double dy = 0;
    if (g.m == 2)
      dy = wrap_offset(g.x_of(cj) - py);
    double r = std::max(std::fabs(dx), std::fabs(dy));
    double expo = -0.5 * T * (lambda[0] * dx * dx + lambda[1] * dy * dy);
    double w = std::exp(expo) * bump(r, eps);
    form[id] = w * std::pow(g.h, k);
  }

  block_cochain out;
  out.degree = degree;
  out.values = Eigen::VectorXd::Zero(cone.layout.dim(degree));
  int offset = (slot == 0) ? 0 : cone.layout.first_dim(degree);
  // Mass gauge is a constant per grid degree, so it cancels in the
  // normalization below.
  out.values.segment(offset, g.cell_count(k)) = form;
  double norm = out.values.norm();
  if (norm <= 0) throw numeric_error("model cochain vanished: bump radius too small for the grid");
  out.values /= norm;
  return out;
}

double projection_defect(const spectral_result& r, const Eigen::VectorXd& xi) {
  if (xi.size() != r.eigenvectors.rows())
    throw validation_error("model cochain dimension does not match the spectrum");
  Eigen::MatrixXd v = r.eigenvectors.leftCols(r.low_count);
  return (xi - v * (v.transpose() * xi)).norm();
}

}  // namespace morsecone
