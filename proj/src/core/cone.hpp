#pragma once

#include <vector>

#include "core/graded_complex.hpp"

namespace morsecone {

/*
 * A cochain complex C^0 .. C^m together with a degree-ell chain map given by
 * wedging with a closed ell-form upstairs:
 *
 *   partial[k]  : C^k -> C^{k+1}     (coboundary, squares to zero)
 *   cone_map[k] : C^k -> C^{k+ell}   (anticommutes: partial cone_map = (-1)^ell cone_map partial)
 *
 * Matrices whose codomain degree falls outside [0, m] have zero rows.
 */
struct chain_map_pair {
  int m = 0;
  int ell = 0;
  std::vector<int> mu;                    // dims, size m+1
  std::vector<rational_matrix> partial;   // size m+1
  std::vector<rational_matrix> cone_map;  // size m+1

  int dim(int k) const {
    return (k < 0 || k > m) ? 0 : mu[static_cast<size_t>(k)];
  }
};

// Shape, nilpotency and anticommutation checks, all exact.
// Throws validation_error with messages "grading error ...",
// "nilpotency violation ..." or "anticommutation violation ...".
void check_pair(const chain_map_pair& p);

graded_complex base_complex(const chain_map_pair& p);  // degrees 0..m

/*
 * Mapping cone of cone_map: degree k carries C^k (+) C^{k-ell+1} with
 * differential
 *
 *   [ partial   cone_map          ]
 *   [ 0         (-1)^{ell-1} partial ]
 *
 * on the degree window [-1, max(m, m+ell-1)]. For ell = 0 the degree -1
 * slot is C^0 sitting in the second summand and the first summand pushes the
 * top out to m; for ell >= 1 the -1 slot is zero but the window still starts
 * there so reports stay uniformly indexed.
 * Throws validation_error("invalid cone data ...") when block shapes cannot
 * be assembled and "grading error ..." when degree bookkeeping is off.
 */
graded_complex mapping_cone(const chain_map_pair& p);

// Matrix of the induced map H^k -> H^{k+ell} in the cohomology_basis bases.
rational_matrix induced_cohomology_map(const chain_map_pair& p, int k);

struct cone_decomposition {
  int degree = 0;
  int coker_dim = 0;  // coker(H^{k-ell} -> H^k)
  int ker_dim = 0;    // ker(H^{k-ell+1} -> H^{k+1})
};

// Per cone degree, the two summands of the cone cohomology. Verifies
// coker + ker = cone betti exactly and throws validation_error on mismatch.
std::vector<cone_decomposition> decompose_cohomology(const chain_map_pair& p);

struct equality_row {
  int degree = 0;
  int rank = 0;   // rank of the cone differential leaving this degree
  long lhs = 0;   // rank + alternating sum of cone betti numbers
  long rhs = 0;   // alternating sum of mu_j + mu_{j-ell+1}
};

struct equality_report {
  std::vector<equality_row> rows;
  bool holds = false;
};

equality_report morse_equalities(const chain_map_pair& p);

struct inequality_row {
  int degree = 0;
  long lhs = 0;    // alternating sum of cone betti numbers
  long rhs = 0;    // alternating sum of mu and cone-map rank corrections
  long slack = 0;  // rhs - lhs, nonnegative when the inequality holds
};

struct inequality_report {
  std::vector<inequality_row> rows;
  bool holds = false;
};

inequality_report morse_inequalities(const chain_map_pair& p);

}  // namespace morsecone
