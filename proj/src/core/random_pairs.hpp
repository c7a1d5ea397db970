#pragma once

#include <random>

#include "core/cone.hpp"

namespace morsecone {

// Product of elementary integer shears (and row swaps), determinant +-1, so
// the inverse stays integral and conjugation never leaves exact arithmetic.
rational_matrix random_unimodular(int n, std::mt19937_64& rng, int shears = -1);

struct pair_gen_options {
  int m_min = 1;
  int m_max = 4;
  int mu_max = 5;   // per-degree dimension cap
  int ell = -1;     // fixed form degree, or -1 for uniform in [0, m]
  int coeff = 3;    // magnitude cap for the random combination coefficients
};

/*
 * Seeded generator of valid inputs for property tests. Construction:
 * pick a rank profile r_k with r_{k-1} + r_k <= mu_k, lay down the canonical
 * slot differentials (coexact slots mapped bijectively onto image slots,
 * which makes nilpotency automatic), conjugate by random unimodular changes
 * of basis, then draw the cone map from the exact solution space of the
 * anticommutation constraints. Every output passes check_pair by
 * construction; tests re-verify rather than trust this.
 */
chain_map_pair random_pair(std::mt19937_64& rng, const pair_gen_options& opt = {});

}  // namespace morsecone
