#include "spectral/cone_operator.hpp"

#include <cmath>
#include <string>

#include "common/errors.hpp"
#include "common/tolerances.hpp"

namespace morsecone {

int block_layout::first_dim(int k) const {
  if (k < 0 || k > m) return 0;
  return n_cells[k];
}

int block_layout::second_dim(int k) const {
  int q = k - ell + 1;
  if (q < 0 || q > m) return 0;
  return n_cells[q];
}

block_layout make_layout(const periodic_grid& g, int ell) {
  if (ell < 0 || ell > g.m) throw validation_error("cup degree out of range for the grid");
  block_layout l;
  l.m = g.m;
  l.ell = ell;
  for (int k = 0; k <= g.m; ++k) l.n_cells[k] = g.cell_count(k);
  return l;
}

namespace {

int block_index(const block_layout& l, int k) { return k - l.lo(); }

double infinity_norm(const sparse_mat& a) {
  double mx = 0;
  for (int c = 0; c < a.outerSize(); ++c)
    for (sparse_mat::InnerIterator it(a, c); it; ++it)
      mx = std::max(mx, std::fabs(it.value()));
  return mx;
}

// Entry value sign * |coeff| * exp(arg); arg collects the deformation and
// gauge exponents.
void push_scaled(std::vector<Eigen::Triplet<double>>& out, int row, int col,
                 double coeff, double arg) {
  if (coeff == 0.0) return;
  double v = coeff * std::exp(arg);
  if (v != 0.0) out.emplace_back(row, col, v);
}

}  // namespace

const sparse_mat& cone_operator::block_at(int k) const {
  int idx = block_index(layout, k);
  if (idx < 0 || idx >= static_cast<int>(tilde.size()))
    throw validation_error("cone operator degree out of range");
  return tilde[static_cast<size_t>(idx)];
}

const sparse_mat& cone_operator::nocup_at(int k) const {
  int idx = block_index(layout, k);
  if (idx < 0 || idx >= static_cast<int>(tilde_nocup.size()))
    throw validation_error("cone operator degree out of range");
  return tilde_nocup[static_cast<size_t>(idx)];
}

const sparse_mat& cone_operator::cup_unit_at(int k) const {
  int idx = block_index(layout, k);
  if (idx < 0 || idx >= static_cast<int>(tilde_cup_unit.size()))
    throw validation_error("cone operator degree out of range");
  return tilde_cup_unit[static_cast<size_t>(idx)];
}

cone_operator make_cone_operator(const periodic_grid& g, const cochain& f,
                                 const cochain& omega, const deform_params& p) {
  if (f.degree != 0) throw validation_error("cone operator needs f as a 0-cochain");
  if (static_cast<int>(f.values.size()) != g.cell_count(0))
    throw validation_error("f sample size does not match the grid");

  cone_operator c;
  c.grid = g;
  c.f = f;
  c.omega = omega;
  c.params = p;
  c.layout = make_layout(g, omega.degree);
  cup_operator cup = cup_with(g, omega);  // validates closedness and Leibniz

  const int ell = omega.degree;
  const double lower_sign = (ell % 2 == 0) ? -1.0 : 1.0;
  const double log_h = std::log(g.h);

  // f at cell anchors and coboundary matrices per grid degree.
  std::vector<Eigen::VectorXd> fa(static_cast<size_t>(g.m) + 1);
  std::vector<sparse_mat> d(static_cast<size_t>(g.m), sparse_mat());
  for (int k = 0; k <= g.m; ++k) fa[static_cast<size_t>(k)] = anchor_vertex_values(g, k, f.values);
  for (int k = 0; k < g.m; ++k) d[static_cast<size_t>(k)] = d_op(g, k);

  for (int k = c.layout.lo(); k < c.layout.hi(); ++k) {
    const int rows = c.layout.dim(k + 1);
    const int cols = c.layout.dim(k);
    const int dom_first = c.layout.first_dim(k);
    const int cod_first = c.layout.first_dim(k + 1);
    const int q = k - ell + 1;  // second slot grid degree at cone degree k

    std::vector<Eigen::Triplet<double>> full, nocup, cup_unit;

    // First slot to first slot: the conjugated coboundary at grid degree k.
    // Mass gauge between adjacent degrees contributes a constant 1/h.
    if (dom_first > 0 && cod_first > 0) {
      const sparse_mat& dk = d[static_cast<size_t>(k)];
      for (int col = 0; col < dk.outerSize(); ++col)
        for (sparse_mat::InnerIterator it(dk, col); it; ++it) {
          double arg = p.T * (fa[static_cast<size_t>(k)][col] -
                              fa[static_cast<size_t>(k) + 1][it.row()]) - log_h;
          push_scaled(full, it.row(), col, it.value(), arg);
          push_scaled(nocup, it.row(), col, it.value(), arg);
        }
    }

    // Second slot to second slot: signed coboundary at grid degree q. The
    // S factors of rho cancel within the slot, so the exponent matches the
    // first slot's.
    if (c.layout.second_dim(k) > 0 && c.layout.second_dim(k + 1) > 0) {
      const sparse_mat& dq = d[static_cast<size_t>(q)];
      for (int col = 0; col < dq.outerSize(); ++col)
        for (sparse_mat::InnerIterator it(dq, col); it; ++it) {
          double arg = p.T * (fa[static_cast<size_t>(q)][col] -
                              fa[static_cast<size_t>(q) + 1][it.row()]) - log_h;
          push_scaled(full, cod_first + it.row(), dom_first + col,
                      lower_sign * it.value(), arg);
          push_scaled(nocup, cod_first + it.row(), dom_first + col,
                      lower_sign * it.value(), arg);
        }
    }

    // Cup channel, second slot to first slot: omega cup at grid degree q,
    // landing in degree q + ell = k + 1. Carries S^{-1} and the h^{-ell}
    // gauge offset.
    if (c.layout.second_dim(k) > 0 && cod_first > 0 && q >= 0 && q + ell <= g.m) {
      const sparse_mat& cq = cup.block[static_cast<size_t>(q)];
      for (int col = 0; col < cq.outerSize(); ++col)
        for (sparse_mat::InnerIterator it(cq, col); it; ++it) {
          double base = p.T * (fa[static_cast<size_t>(q)][col] -
                               fa[static_cast<size_t>(q + ell)][it.row()]) - ell * log_h;
          push_scaled(full, it.row(), dom_first + col, it.value(), base - p.log_S);
          push_scaled(cup_unit, it.row(), dom_first + col, it.value(), base);
        }
    }

    sparse_mat mf(rows, cols), mn(rows, cols), mc(rows, cols);
    mf.setFromTriplets(full.begin(), full.end());
    mn.setFromTriplets(nocup.begin(), nocup.end());
    mc.setFromTriplets(cup_unit.begin(), cup_unit.end());
    c.tilde.push_back(std::move(mf));
    c.tilde_nocup.push_back(std::move(mn));
    c.tilde_cup_unit.push_back(std::move(mc));
  }

  // Nilpotency survives conjugation exactly; anything beyond roundoff means
  // the assembly destroyed the complex structure.
  for (size_t i = 0; i + 1 < c.tilde.size(); ++i) {
    for (const auto* fam : {&c.tilde, &c.tilde_nocup}) {
      const sparse_mat& a = (*fam)[i + 1];
      const sparse_mat& b = (*fam)[i];
      double scale = infinity_norm(a) * infinity_norm(b);
      sparse_mat prod = a * b;
      double defect = infinity_norm(prod);
      if (defect > tol::cone_nilpotent_rel * std::max(1.0, scale))
        throw numeric_error("deformed differential fails to square to zero at degree " +
                            std::to_string(static_cast<int>(i) + c.layout.lo()));
    }
  }
  return c;
}

Eigen::MatrixXd dirac_laplacian(const cone_operator& c, int k) {
  if (k < c.layout.lo() || k > c.layout.hi())
    throw validation_error("cone operator degree out of range");
  const int dim = c.layout.dim(k);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(dim, dim);
  if (k < c.layout.hi()) {
    const sparse_mat& up = c.block_at(k);
    b += Eigen::MatrixXd(sparse_mat(up.transpose() * up));
  }
  if (k > c.layout.lo()) {
    const sparse_mat& down = c.block_at(k - 1);
    b += Eigen::MatrixXd(sparse_mat(down * down.transpose()));
  }
  double scale = b.cwiseAbs().maxCoeff();
  double defect = (b - b.transpose()).cwiseAbs().maxCoeff();
  if (defect > tol::cone_nilpotent_rel * std::max(1.0, scale))
    throw numeric_error("Laplacian symmetry defect beyond roundoff");
  return 0.5 * (b + b.transpose());
}

}  // namespace morsecone
