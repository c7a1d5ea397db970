#pragma once

#include <vector>

#include "spectral/spectrum.hpp"

namespace morsecone {

// A vertex where the sampled f is strictly monotone-separated from both
// axis neighbors in every direction; index counts the axes along which it
// is a local maximum.
struct grid_critical_point {
  int i = 0;
  int j = 0;
  int index = 0;
  double value = 0;
  bool negative_axis[2] = {false, false};
};

std::vector<grid_critical_point> find_critical_points(const periodic_grid& g,
                                                      const cochain& f);

// Discrete stand-in for the Morse chart Gaussian form
// exp(-T/2 |x|^2) dx_1 ... dx_k: supported on cells whose direction set is
// exactly the point's negative axes, weighted by a Hessian-matched Gaussian
// in the wrapped distance from the point and tapered to zero by a bump of
// radius eps/2. Returned embedded in the requested block slot (0 = first
// summand at cone degree index, 1 = second summand at cone degree
// index + ell - 1), in the mass gauge, normalized to unit norm.
struct block_cochain {
  int degree = 0;
  Eigen::VectorXd values;
};

block_cochain gaussian_model_cochain(const cone_operator& cone,
                                     const grid_critical_point& p, double T,
                                     int slot, double eps = 0.48);

// Distance from xi to its orthogonal projection onto the low cluster.
double projection_defect(const spectral_result& r, const Eigen::VectorXd& xi);

}  // namespace morsecone
