#pragma once

#include <cmath>
#include <limits>

namespace morsecone::tol {

// Contract tolerances. Every numeric acceptance threshold used by the library
// and its tests lives here; tests refer to these constants instead of
// re-deriving values.

inline constexpr double dd_zero = 1e-13;        // ||d(d(b))|| per coboundary composition
inline constexpr double leibniz = 1e-12;        // cup/coboundary compatibility check
inline constexpr double adjoint_involution = 1e-13;
inline constexpr double adjoint_inner = 1e-12;  // <A a, b> vs <a, A* b>
inline constexpr double sample_exact = 1e-12;   // identities that hold exactly up to roundoff

inline constexpr double cone_nilpotent_rel = 1e-10;  // ||(d_ST)^2 v|| relative to operator scale
inline constexpr double zero_eig = 1e-8;             // zero-mode count cutoff on eigenvalues
inline constexpr double rank_rel = 1e-8;             // relative singular value cutoff for ranks
inline constexpr double leakage_rel = 1e-6;          // off-cluster component of mapped images
inline constexpr double eig_residual = 1e-7;         // ||B v - lambda v|| <= eig_residual*max(1,|lambda|)
inline constexpr double orthonormal = 1e-8;          // eigenvector Gram defect
inline constexpr double psd_floor = -1e-10;          // smallest admissible eigenvalue of a PSD block
inline constexpr double gap_floor = 1e-12;           // numerical zero used in gap ratios
inline constexpr double model_norm = 1e-8;           // Gaussian model cochain normalization slack
inline constexpr double defect_trivial = 1e-8;       // projection defect of an exact eigenvector

// Floating point floors scale with the spectral radius of the block being
// decomposed; a fixed absolute tolerance is meaningless once the operator
// norm reaches 1e8. Guards below widen the fixed tolerances by a
// norm-proportional term so that exact-arithmetic facts remain checkable at
// strongly deformed parameters.
inline double eps_scale(double matrix_scale, double n_hint = 1024.0) {
  return std::numeric_limits<double>::epsilon() * std::max(1.0, matrix_scale) * n_hint;
}

// A computed eigenvalue this small is indistinguishable from an exact zero.
inline double numerical_zero(double lambda_max) {
  return std::max(gap_floor, eps_scale(std::fabs(lambda_max)));
}

}  // namespace morsecone::tol
