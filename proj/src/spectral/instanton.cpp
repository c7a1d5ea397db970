#include "spectral/instanton.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "common/errors.hpp"
#include "common/tolerances.hpp"

namespace morsecone {

const instanton_degree& instanton_result::at(int k) const {
  for (const auto& d : degrees)
    if (d.degree == k) return d;
  throw validation_error("instanton degree out of range");
}

namespace {

double sparse_max_abs(const sparse_mat& a) {
  double mx = 0;
  for (int c = 0; c < a.outerSize(); ++c)
    for (sparse_mat::InnerIterator it(a, c); it; ++it)
      mx = std::max(mx, std::fabs(it.value()));
  return mx;
}

// Worst-case rotation of a computed low eigenvector into the high cluster:
// eps * lambda_max over the cluster gap. The measurement noise of a mapped
// matrix entry is this angle times the channel's operator scale.
double vector_error(const spectral_result& r) {
  const int n = static_cast<int>(r.eigenvalues.size());
  if (n == 0 || r.low_count >= n) return std::numeric_limits<double>::epsilon();
  double lmax = r.eigenvalues[n - 1];
  double gap = std::max(r.eigenvalues[r.low_count], tol::gap_floor);
  return std::numeric_limits<double>::epsilon() * std::max(1.0, lmax / gap);
}

void clean(Eigen::MatrixXd& m, double floor) {
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i)
      if (std::fabs(m(i, j)) <= floor) m(i, j) = 0.0;
}

int rank_of(const Eigen::MatrixXd& g) {
  if (g.rows() == 0 || g.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > tol::rank_rel * sv[0]) ++r;
  return r;
}

}  // namespace

instanton_result instanton_complex(const cone_operator& cone,
                                   const std::vector<spectral_result>& spectra) {
  const int lo = cone.layout.lo();
  const int hi = cone.layout.hi();
  if (static_cast<int>(spectra.size()) != hi - lo + 1)
    throw validation_error("instanton extraction needs a spectrum per degree");

  const double s_inv = cone.params.S_inverse();
  std::vector<int> ranks(spectra.size(), 0);

  for (int k = lo; k < hi; ++k) {
    const spectral_result& dom = spectra[static_cast<size_t>(k - lo)];
    const spectral_result& cod = spectra[static_cast<size_t>(k - lo + 1)];
    if (dom.degree != k || cod.degree != k + 1)
      throw validation_error("spectra out of order for instanton extraction");
    const int p = dom.low_count;
    const int q = cod.low_count;
    if (p == 0 || q == 0) continue;

    Eigen::MatrixXd v = dom.eigenvectors.leftCols(p);
    Eigen::MatrixXd w = cod.eigenvectors.leftCols(q);
    double verr = std::max(vector_error(dom), vector_error(cod));

    // The full operator maps the low cluster into the low cluster; residual
    // mass on high eigenvectors beyond the noise floor is a hard failure.
    Eigen::MatrixXd image = cone.block_at(k) * v;
    Eigen::MatrixXd high = image - w * (w.transpose() * image);
    double full_scale = sparse_max_abs(cone.block_at(k));
    double noise_floor = 32.0 * full_scale *
                         std::max(verr, std::numeric_limits<double>::epsilon());
    for (int j = 0; j < high.cols(); ++j) {
      double leak = high.col(j).norm();
      if (leak > std::max(tol::leakage_rel * image.col(j).norm(), noise_floor))
        throw numeric_error("cluster leakage at degree " + std::to_string(k) +
                            ": deformation too weak or grid too coarse");
    }

    Eigen::MatrixXd g1 = w.transpose() * (cone.nocup_at(k) * v);
    Eigen::MatrixXd g2 = w.transpose() * (cone.cup_unit_at(k) * v);
    double floor1 = 32.0 * sparse_max_abs(cone.nocup_at(k)) *
                    std::max(verr, std::numeric_limits<double>::epsilon());
    double floor2 = 32.0 * sparse_max_abs(cone.cup_unit_at(k)) *
                    std::max(verr, std::numeric_limits<double>::epsilon());
    clean(g1, floor1);
    clean(g2, floor2);
    Eigen::MatrixXd g = g1 + s_inv * g2;
    ranks[static_cast<size_t>(k - lo)] = rank_of(g);
  }

  instanton_result out;
  for (int k = lo; k <= hi; ++k) {
    instanton_degree d;
    d.degree = k;
    d.dim_F = spectra[static_cast<size_t>(k - lo)].low_count;
    d.rank_next = ranks[static_cast<size_t>(k - lo)];
    int below = (k > lo) ? ranks[static_cast<size_t>(k - lo - 1)] : 0;
    d.cohomology = d.dim_F - d.rank_next - below;
    out.degrees.push_back(d);
  }
  return out;
}

}  // namespace morsecone
