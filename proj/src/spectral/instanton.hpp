#pragma once

#include <vector>

#include "spectral/spectrum.hpp"

namespace morsecone {

// The restriction of the deformed differential to the low spectral cluster:
// per degree the cluster dimension, the rank of the restricted map to the
// next degree, and the resulting cohomology dimension
// dim F^k - R_k - R_{k-1}.
struct instanton_degree {
  int degree = 0;
  int dim_F = 0;
  int rank_next = 0;
  int cohomology = 0;
};

struct instanton_result {
  std::vector<instanton_degree> degrees;

  const instanton_degree& at(int k) const;
};

/*
 * Rank extraction works on the mapped matrix G between eigenvector bases of
 * consecutive low clusters. G is measured through the two operator channels
 * separately: the no-cup part and the unit-scale cup part, recombined as
 * G = G_nocup + S^{-1} G_cup. Measuring the combined operator directly would
 * bury the cup channel: its true magnitude is S^{-1} = e^{-c0 T}, while each
 * measured matrix carries eigenvector noise of order
 * eps * lambda_max / (smallest high eigenvalue), which the schedule pushes
 * far above S^{-1}. Each channel is cleaned at its own noise floor before
 * the exact S^{-1} rescaling, so structured entries survive at any schedule
 * point and pure noise is zeroed.
 *
 * Ranks then count singular values above 1e-8 times the largest one.
 *
 * Degrees must all carry a computed cluster split. Throws "cluster leakage"
 * when the full operator maps a low eigenvector measurably outside the next
 * degree's low cluster, which signals T too small or the grid too coarse.
 */
instanton_result instanton_complex(const cone_operator& cone,
                                   const std::vector<spectral_result>& spectra);

}  // namespace morsecone
