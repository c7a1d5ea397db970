#include "dec/grid.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "common/errors.hpp"
#include "common/tolerances.hpp"

namespace morsecone {

namespace {

void check_degree(const periodic_grid& g, int k, const char* what) {
  if (k < 0 || k > g.m)
    throw validation_error(std::string(what) + ": degree " + std::to_string(k) +
                           " outside [0, " + std::to_string(g.m) + "]");
}

// Direction set of a k-cell id.
std::vector<int> directions_of(const periodic_grid& g, int k, int id) {
  if (k == 0) return {};
  if (k == 1) return {g.edge_axis(id)};
  return {0, 1};
}

int cell_id(const periodic_grid& g, int i, int j, const std::vector<int>& dirs) {
  switch (dirs.size()) {
    case 0:
      return g.vertex_id(i, j);
    case 1:
      return g.edge_id(dirs[0], i, j);
    default:
      return g.square_id(i, j);
  }
}

}  // namespace

int periodic_grid::vertex_count() const {
  int c = n;
  for (int a = 1; a < m; ++a) c *= n;
  return c;
}

int periodic_grid::cell_count(int k) const {
  if (k < 0 || k > m) return 0;
  if (k == 0) return vertex_count();
  if (k == 1) return m * vertex_count();
  return vertex_count();
}

int periodic_grid::wrap(int i) const {
  int r = i % n;
  return r < 0 ? r + n : r;
}

int periodic_grid::vertex_id(int i, int j) const {
  return wrap(i) + (m == 2 ? n * wrap(j) : 0);
}

int periodic_grid::edge_id(int axis, int i, int j) const {
  return axis * vertex_count() + vertex_id(i, j);
}

int periodic_grid::square_id(int i, int j) const { return vertex_id(i, j); }

void periodic_grid::anchor_of(int k, int id, int& i, int& j) const {
  int base = (k == 1) ? id % vertex_count() : id;
  i = base % n;
  j = (m == 2) ? base / n : 0;
}

int periodic_grid::edge_axis(int id) const { return id / vertex_count(); }

periodic_grid make_grid(int m, int n) {
  if (m != 1 && m != 2)
    throw validation_error("grid dimension must be 1 or 2, got " + std::to_string(m));
  if (n < 4)
    throw validation_error("grid resolution must be at least 4, got " + std::to_string(n));
  periodic_grid g;
  g.m = m;
  g.n = n;
  g.h = 1.0 / n;
  return g;
}

sparse_mat d_op(const periodic_grid& g, int k) {
  if (k < 0 || k >= g.m)
    throw validation_error("coboundary degree " + std::to_string(k) + " outside [0, " +
                           std::to_string(g.m - 1) + ")");
  std::vector<Eigen::Triplet<double>> trip;
  int rows = g.cell_count(k + 1);
  for (int id = 0; id < rows; ++id) {
    std::vector<int> dirs = directions_of(g, k + 1, id);
    int i, j;
    g.anchor_of(k + 1, id, i, j);
    for (size_t bi = 0; bi < dirs.size(); ++bi) {
      int b = dirs[bi];
      double sign = (bi % 2 == 0) ? 1.0 : -1.0;  // (-1)^{#smaller directions}
      std::vector<int> facet;
      for (int d : dirs)
        if (d != b) facet.push_back(d);
      int near = cell_id(g, i, j, facet);
      int far = cell_id(g, i + (b == 0 ? 1 : 0), j + (b == 1 ? 1 : 0), facet);
      trip.emplace_back(id, far, sign);
      trip.emplace_back(id, near, -sign);
    }
  }
  sparse_mat d(rows, g.cell_count(k));
  d.setFromTriplets(trip.begin(), trip.end());
  return d;
}

Eigen::VectorXd mass_diag(const periodic_grid& g, int k) {
  check_degree(g, k, "mass");
  double w = std::pow(g.h, g.m - 2 * k);
  return Eigen::VectorXd::Constant(g.cell_count(k), w);
}

double mass_inner(const periodic_grid& g, int k, const cochain& a, const cochain& b) {
  check_degree(g, k, "mass");
  if (a.degree != k || b.degree != k ||
      static_cast<int>(a.values.size()) != g.cell_count(k) ||
      static_cast<int>(b.values.size()) != g.cell_count(k))
    throw validation_error("mass inner product: cochain shape mismatch");
  double w = std::pow(g.h, g.m - 2 * k);
  double acc = 0;
  for (size_t i = 0; i < a.values.size(); ++i) acc += a.values[i] * b.values[i];
  return w * acc;
}

double mass_norm(const periodic_grid& g, int k, const cochain& a) {
  return std::sqrt(mass_inner(g, k, a, a));
}

cochain sample_zero_form(const periodic_grid& g,
                         const std::function<double(double, double)>& f) {
  cochain c;
  c.degree = 0;
  c.values.resize(static_cast<size_t>(g.vertex_count()));
  for (int id = 0; id < g.vertex_count(); ++id) {
    int i, j;
    g.anchor_of(0, id, i, j);
    c.values[static_cast<size_t>(id)] = f(g.x_of(i), g.m == 2 ? g.x_of(j) : 0.0);
  }
  return c;
}

cochain sample_form(const periodic_grid& g, int k, const std::vector<double>& coeffs) {
  check_degree(g, k, "sample_form");
  size_t want = (k == 1) ? static_cast<size_t>(g.m) : 1;
  if (coeffs.size() != want)
    throw validation_error("sample_form: expected " + std::to_string(want) +
                           " coefficients for degree " + std::to_string(k) + ", got " +
                           std::to_string(coeffs.size()));
  cochain c;
  c.degree = k;
  c.values.assign(static_cast<size_t>(g.cell_count(k)), 0.0);
  double scale = std::pow(g.h, k);
  for (int id = 0; id < g.cell_count(k); ++id) {
    double coeff = (k == 1) ? coeffs[static_cast<size_t>(g.edge_axis(id))] : coeffs[0];
    c.values[static_cast<size_t>(id)] = coeff * scale;
  }
  return c;
}

Eigen::VectorXd anchor_vertex_values(const periodic_grid& g, int k,
                                     const std::vector<double>& vertex_values) {
  check_degree(g, k, "anchor extension");
  if (static_cast<int>(vertex_values.size()) != g.vertex_count())
    throw validation_error("anchor extension: vertex data has wrong length");
  Eigen::VectorXd out(g.cell_count(k));
  for (int id = 0; id < g.cell_count(k); ++id) {
    int i, j;
    g.anchor_of(k, id, i, j);
    out[id] = vertex_values[static_cast<size_t>(g.vertex_id(i, j))];
  }
  return out;
}

cup_operator cup_with(const periodic_grid& g, const cochain& omega) {
  int ell = omega.degree;
  check_degree(g, ell, "cup");
  if (static_cast<int>(omega.values.size()) != g.cell_count(ell))
    throw validation_error("cup: omega has wrong length");
  if (ell < g.m) {
    sparse_mat d = d_op(g, ell);
    Eigen::VectorXd v =
        Eigen::Map<const Eigen::VectorXd>(omega.values.data(), omega.values.size());
    if ((d * v).lpNorm<Eigen::Infinity>() != 0.0) throw validation_error("not closed");
  }

  cup_operator cup;
  cup.ell = ell;
  for (int q = 0; q + ell <= g.m; ++q) {
    int target = q + ell;
    std::vector<Eigen::Triplet<double>> trip;
    for (int id = 0; id < g.cell_count(target); ++id) {
      std::vector<int> dirs = directions_of(g, target, id);
      int i, j;
      g.anchor_of(target, id, i, j);
      int nd = static_cast<int>(dirs.size());
      for (int mask = 0; mask < (1 << nd); ++mask) {
        std::vector<int> A, B;
        for (int t = 0; t < nd; ++t) ((mask >> t) & 1 ? A : B).push_back(dirs[static_cast<size_t>(t)]);
        if (static_cast<int>(A.size()) != ell) continue;
        int inversions = 0;
        for (int a : A)
          for (int b : B)
            if (a > b) ++inversions;
        double sign = (inversions % 2 == 0) ? 1.0 : -1.0;
        double w = omega.values[static_cast<size_t>(cell_id(g, i, j, A))];
        if (w == 0.0) continue;
        int si = i, sj = j;
        for (int a : A) (a == 0 ? si : sj) += 1;
        trip.emplace_back(id, cell_id(g, si, sj, B), sign * w);
      }
    }
    sparse_mat blockq(g.cell_count(target), g.cell_count(q));
    blockq.setFromTriplets(trip.begin(), trip.end());
    cup.block.push_back(std::move(blockq));
  }

  // Leibniz spot check on seeded random cochains. For closed omega the
  // identity is exact in the cubical model; anything above the tolerance
  // indicates a broken convention and must stop the run.
  std::mt19937_64 rng(0xdecc0de);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int q = 0; q + ell + 1 <= g.m; ++q) {
    sparse_mat d_lo = d_op(g, q);
    sparse_mat d_hi = d_op(g, q + ell);
    double lsign = (ell % 2 == 0) ? 1.0 : -1.0;
    for (int trial = 0; trial < 3; ++trial) {
      Eigen::VectorXd beta(g.cell_count(q));
      for (int t = 0; t < beta.size(); ++t) beta[t] = gauss(rng);
      Eigen::VectorXd lhs = d_hi * (cup.block[static_cast<size_t>(q)] * beta);
      Eigen::VectorXd rhs = lsign * (cup.block[static_cast<size_t>(q + 1)] * (d_lo * beta));
      double res = (lhs - rhs).lpNorm<Eigen::Infinity>();
      if (res > tol::leibniz * std::max(1.0, beta.lpNorm<Eigen::Infinity>()))
        throw numeric_error("cup product violates the Leibniz identity: residual " +
                            std::to_string(res) + " at degree " + std::to_string(q));
    }
  }
  return cup;
}

sparse_mat adjoint(const periodic_grid& g, const sparse_mat& op, int k_dom, int k_cod) {
  check_degree(g, k_dom, "adjoint");
  check_degree(g, k_cod, "adjoint");
  if (op.cols() != g.cell_count(k_dom) || op.rows() != g.cell_count(k_cod))
    throw validation_error("adjoint: operator shape does not match the degrees");
  Eigen::VectorXd m_dom = mass_diag(g, k_dom);
  Eigen::VectorXd m_cod = mass_diag(g, k_cod);
  sparse_mat at = sparse_mat(op.transpose());
  return m_dom.cwiseInverse().asDiagonal() * at * m_cod.asDiagonal();
}

double a_omega(const periodic_grid& g, const cochain& omega) {
  int ell = omega.degree;
  check_degree(g, ell, "a_omega");
  double hscale = std::pow(g.h, ell);
  double best = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    int i, j;
    g.anchor_of(0, v, i, j);
    double sq = 0;
    if (ell == 0) {
      double c = omega.values[static_cast<size_t>(v)];
      sq = c * c;
    } else if (ell == 1) {
      for (int axis = 0; axis < g.m; ++axis) {
        double c = omega.values[static_cast<size_t>(g.edge_id(axis, i, j))] / hscale;
        sq += c * c;
      }
    } else {
      double c = omega.values[static_cast<size_t>(g.square_id(i, j))] / hscale;
      sq = c * c;
    }
    best = std::max(best, sq);
  }
  return std::pow(2.0, g.m) * std::sqrt(best);
}

}  // namespace morsecone
