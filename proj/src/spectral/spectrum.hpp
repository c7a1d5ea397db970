#pragma once

#include <Eigen/Dense>

#include "spectral/cone_operator.hpp"

namespace morsecone {

// Full eigendecomposition of one degree's Laplacian, in the mass gauge:
// plain dot products realize the block mass inner product, so orthonormal
// columns here are mass-orthonormal block cochains.
struct spectral_result {
  int degree = 0;
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // columns, orthonormal
  int low_count = 0;
  double gap_ratio = 0.0;
};

spectral_result dense_spectrum(const Eigen::MatrixXd& lap, int degree);

// Threshold mode: low cluster = eigenvalues <= threshold (the definition's
// lambda <= 1 by default). Gap mode: split at the largest multiplicative
// jump instead. Both set low_count and gap_ratio on the result and return
// them; gap_ratio uses the smallest high eigenvalue over the largest low
// eigenvalue that is resolvable above the operator's floating point floor,
// with an absolute floor of 1e-12, and +infinity when either side is empty.
struct cluster_split_result {
  int low_count = 0;
  double gap_ratio = 0.0;
};

cluster_split_result cluster_split(spectral_result& r, double threshold = 1.0);
cluster_split_result cluster_split_gap(spectral_result& r);

// Eigenvalues indistinguishable from zero at the 1e-8 cutoff.
int zero_count(const spectral_result& r);

}  // namespace morsecone
