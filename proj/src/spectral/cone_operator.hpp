#pragma once

#include <vector>

#include "dec/grid.hpp"
#include "spectral/deform.hpp"

namespace morsecone {

// Degree bookkeeping for the block complex F^k = Omega^k + Omega^{k-ell+1}
// on a fixed grid. Slots whose grid degree falls outside [0, m] are empty;
// only ell = 0 populates degree -1 and only ell = 2 reaches degree m + 1.
struct block_layout {
  int m = 0;
  int ell = 0;
  int n_cells[3] = {0, 0, 0};

  int lo() const { return ell == 0 ? -1 : 0; }
  int hi() const { return ell <= 1 ? m : m + ell - 1; }
  int first_dim(int k) const;
  int second_dim(int k) const;
  int dim(int k) const { return first_dim(k) + second_dim(k); }
};

block_layout make_layout(const periodic_grid& g, int ell);

/*
 * The deformed mapping cone differential in the mass-orthonormal gauge.
 *
 * Built by conjugation: d_ST = rho^{-1} [d, omega cup; 0, (-1)^{ell-1} d] rho
 * with rho = diag(e^{Tf}, S^{-1} e^{Tf}), then conjugated once more by the
 * square root of the block mass so that adjoints become plain transposes and
 * the Laplacian below is an ordinary symmetric matrix. The conjugation route
 * makes nilpotency and cohomology invariance identities of the construction
 * instead of limits to approximate; the additive form d + T df + S^{-1} omega
 * is its continuum counterpart.
 *
 * Every matrix entry is assembled in log space: the exponent combines
 * T * (f at domain anchor - f at codomain anchor), -log S on the cup channel,
 * and the mass gauge offset. Arguments stay local differences, so schedule
 * values as large as S = e^300 never overflow a double.
 *
 * Three channel families are kept:
 *   tilde          the full operator,
 *   tilde_nocup    cup channel dropped (the S -> infinity limit; two
 *                  conjugated scalar complexes on the diagonal),
 *   tilde_cup_unit the cup channel alone at S = 1.
 * tilde = tilde_nocup + S^{-1} tilde_cup_unit entrywise; downstream rank
 * extraction needs the two parts separately because S^{-1} drives the cup
 * channel far below float resolution of the combined matrix.
 */
struct cone_operator {
  periodic_grid grid;
  cochain f;
  cochain omega;
  deform_params params;
  block_layout layout;
  std::vector<sparse_mat> tilde;          // index k - lo(): degree k -> k + 1
  std::vector<sparse_mat> tilde_nocup;
  std::vector<sparse_mat> tilde_cup_unit;

  const sparse_mat& block_at(int k) const;
  const sparse_mat& nocup_at(int k) const;
  const sparse_mat& cup_unit_at(int k) const;
};

cone_operator make_cone_operator(const periodic_grid& g, const cochain& f,
                                 const cochain& omega, const deform_params& p);

// Dense D^2 restricted to degree k: d^T d + d d^T in the mass gauge.
// Symmetric and positive semidefinite up to roundoff.
Eigen::MatrixXd dirac_laplacian(const cone_operator& c, int k);

}  // namespace morsecone
