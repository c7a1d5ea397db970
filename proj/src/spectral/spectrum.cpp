#include "spectral/spectrum.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "common/errors.hpp"
#include "common/tolerances.hpp"

namespace morsecone {

spectral_result dense_spectrum(const Eigen::MatrixXd& lap, int degree) {
  spectral_result r;
  r.degree = degree;
  if (lap.rows() == 0) {
    r.eigenvalues.resize(0);
    r.eigenvectors.resize(0, 0);
    return r;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
  if (es.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "eigensolver failed to converge on a " << lap.rows() << "x" << lap.cols()
        << " block, max |entry| " << lap.cwiseAbs().maxCoeff();
    throw numeric_error(msg.str());
  }
  r.eigenvalues = es.eigenvalues();
  r.eigenvectors = es.eigenvectors();

  const double lmax = std::fabs(r.eigenvalues[r.eigenvalues.size() - 1]);
  const double floor = std::max(tol::psd_floor * -1.0, tol::eps_scale(lmax));
  if (r.eigenvalues[0] < -floor)
    throw numeric_error("Laplacian has an eigenvalue below the PSD floor");
  for (int i = 0; i < r.eigenvalues.size(); ++i)
    if (r.eigenvalues[i] < 0) r.eigenvalues[i] = 0;

  // Residual and Gram guards; these fail only when the solver silently
  // degraded, so the tolerance widens with the operator scale.
  Eigen::MatrixXd res =
      lap * r.eigenvectors - r.eigenvectors * r.eigenvalues.asDiagonal();
  for (int j = 0; j < res.cols(); ++j) {
    double bound = std::max(tol::eig_residual * std::max(1.0, r.eigenvalues[j]),
                            tol::eps_scale(lmax));
    if (res.col(j).norm() > bound)
      throw numeric_error("eigenpair residual beyond tolerance");
  }
  double gram = (r.eigenvectors.transpose() * r.eigenvectors -
                 Eigen::MatrixXd::Identity(lap.rows(), lap.cols()))
                    .cwiseAbs()
                    .maxCoeff();
  if (gram > tol::orthonormal) throw numeric_error("eigenvectors lost orthonormality");
  return r;
}

namespace {

double ratio_at_split(const Eigen::VectorXd& ev, int low_count) {
  const int n = static_cast<int>(ev.size());
  if (low_count <= 0 || low_count >= n)
    return std::numeric_limits<double>::infinity();
  const double lmax = ev[n - 1];
  // The largest low eigenvalue only counts if the floats can distinguish it
  // from an exact zero at this operator scale.
  double largest_low = 0;
  for (int i = low_count - 1; i >= 0; --i) {
    if (ev[i] > tol::numerical_zero(lmax)) {
      largest_low = ev[i];
      break;
    }
  }
  return ev[low_count] / std::max(largest_low, tol::gap_floor);
}

}  // namespace

cluster_split_result cluster_split(spectral_result& r, double threshold) {
  int low = 0;
  while (low < r.eigenvalues.size() && r.eigenvalues[low] <= threshold) ++low;
  r.low_count = low;
  r.gap_ratio = ratio_at_split(r.eigenvalues, low);
  return {r.low_count, r.gap_ratio};
}

cluster_split_result cluster_split_gap(spectral_result& r) {
  const int n = static_cast<int>(r.eigenvalues.size());
  int best = 0;
  double best_ratio = -1;
  for (int i = 1; i < n; ++i) {
    double ratio = r.eigenvalues[i] / std::max(r.eigenvalues[i - 1], tol::gap_floor);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = i;
    }
  }
  r.low_count = best;
  r.gap_ratio = ratio_at_split(r.eigenvalues, best);
  return {r.low_count, r.gap_ratio};
}

int zero_count(const spectral_result& r) {
  int z = 0;
  while (z < r.eigenvalues.size() && r.eigenvalues[z] <= tol::zero_eig) ++z;
  return z;
}

}  // namespace morsecone
