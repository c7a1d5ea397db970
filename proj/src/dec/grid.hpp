#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <functional>
#include <vector>

namespace morsecone {

using sparse_mat = Eigen::SparseMatrix<double>;

/*
 * Periodic cubical grid on the flat torus [0,1)^m, m in {1,2}, n cells per
 * axis, spacing h = 1/n. Orientation and indexing conventions, used
 * consistently by d_op, cup_with, and adjoint:
 *
 *   - Every k-cell is identified by its anchor vertex (lowest corner) and a
 *     sorted set D of axis directions, |D| = k. Axes are ordered x = 0,
 *     y = 1 (lexicographic), and a cell is oriented by that order.
 *   - Ids: vertex (i, j) -> i + n*j; edge along axis a -> a*n^m + i + n*j;
 *     square -> i + n*j. Indices wrap modulo n.
 *   - Coboundary: for a (k+1)-cell with directions E at anchor x,
 *       (d a)(cell) = sum_{b in E} (-1)^{#{b' in E : b' < b}}
 *                     (a(facet at x + h e_b) - a(facet at x)),
 *     both facets keeping directions E \ {b}. On m = 1 this is
 *     (d a)(edge i) = a(i+1) - a(i).
 *   - Cup product: for u of degree p, v of degree q,
 *       (u cup v)(cell x, D) = sum_{A disjoint-union B = D, |A| = p}
 *         (-1)^{#{(a,b) in A x B : a > b}}
 *         u(cell x, A) * v(cell x + h*sum_{a in A} e_a, B),
 *     the front-face/back-face pairing with shuffle signs.
 */
struct periodic_grid {
  int m = 0;
  int n = 0;
  double h = 0;

  int points_per_axis() const { return n; }
  int vertex_count() const;
  int cell_count(int k) const;  // 0 outside [0, m]

  int wrap(int i) const;
  int vertex_id(int i, int j) const;
  int edge_id(int axis, int i, int j) const;
  int square_id(int i, int j) const;
  // Anchor coordinates of a k-cell id, and the axis of a 1-cell id.
  void anchor_of(int k, int id, int& i, int& j) const;
  int edge_axis(int id) const;

  double x_of(int i) const { return h * i; }
};

// Validates m in {1,2} and n >= 4.
periodic_grid make_grid(int m, int n);

struct cochain {
  int degree = 0;
  std::vector<double> values;
};

// Discrete coboundary, degree k -> k+1. Requires 0 <= k < m.
sparse_mat d_op(const periodic_grid& g, int k);

// Diagonal L2 weights h^m * h^{-2k}, one per k-cell: a cochain sampling a
// unit constant form has norm exactly 1 on every resolution.
Eigen::VectorXd mass_diag(const periodic_grid& g, int k);
double mass_inner(const periodic_grid& g, int k, const cochain& a, const cochain& b);
double mass_norm(const periodic_grid& g, int k, const cochain& a);

// Pointwise vertex samples of a periodic scalar; for m = 1 the second
// coordinate is fixed at 0.
cochain sample_zero_form(const periodic_grid& g,
                         const std::function<double(double, double)>& f);

/*
 * Constant-coefficient form integrated over cells:
 *   k = 0: coeffs = {c}, every vertex carries c
 *   k = 1: coeffs = one c per axis, edges along axis a carry c_a * h
 *   k = 2: coeffs = {c}, every square carries c * h^2
 * The result is exactly closed (equal values cancel in d).
 */
cochain sample_form(const periodic_grid& g, int k, const std::vector<double>& coeffs);

// Value of f at each k-cell's anchor vertex; the conjugation weights
// downstream extend vertex data to all degrees this way.
Eigen::VectorXd anchor_vertex_values(const periodic_grid& g, int k,
                                     const std::vector<double>& vertex_values);

struct cup_operator {
  int ell = 0;
  // block[k]: degree k -> k + ell, for k = 0 .. m - ell.
  std::vector<sparse_mat> block;
};

/*
 * The operator beta -> omega cup beta for a closed cochain omega.
 * Throws validation_error("not closed") when d(omega) != 0, and
 * numeric_error when the Leibniz identity d(omega cup beta) =
 * (-1)^ell omega cup (d beta) fails on a seeded random sample; for closed
 * omega the cubical cup product satisfies it identically, so a failure
 * means corrupted input.
 */
cup_operator cup_with(const periodic_grid& g, const cochain& omega);

// M_dom^{-1} op^T M_cod: the adjoint with respect to the mass inner
// products on the two degrees.
sparse_mat adjoint(const periodic_grid& g, const sparse_mat& op, int k_dom, int k_cod);

// Operator-norm bound constant for omega cup: 2^m times the largest
// pointwise metric norm of omega over the grid, read off anchor-wise from
// the cell values (coefficient = value / h^ell).
double a_omega(const periodic_grid& g, const cochain& omega);

}  // namespace morsecone
