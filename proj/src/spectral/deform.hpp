#pragma once

#include <vector>

#include "dec/grid.hpp"

namespace morsecone {

// Deformation strength T and cone scaling S. S is held as log(S) so schedule
// values like exp(60) stay exact in the parameter and only reach the
// exponential inside per-entry assembly, where arguments are local
// differences and never overflow.
struct deform_params {
  double T = 0.0;
  double log_S = 0.0;
  bool log_domain = false;

  double S() const;
  double S_inverse() const;
};

deform_params schedule_at(double T, double c0);
deform_params explicit_ST(double S, double T);

// Schedule constant 1 + 2*max|f| from the sampled function.
double default_c0(const cochain& f);

// The block-diagonal cochain isomorphism rho_ST = diag(e^{Tf}, S^{-1}e^{Tf}),
// extended from vertices to k-cells by the cell's anchor vertex value.
// Materialized diagonals, one vector per cone degree over the block layout
// Omega^k + Omega^{k-ell+1}.
struct block_scaling {
  int lo = 0;
  std::vector<Eigen::VectorXd> diag;

  const Eigen::VectorXd& at(int degree) const;
};

block_scaling scaling_map(const periodic_grid& g, const cochain& f, int ell,
                          const deform_params& p);
block_scaling inverse(const block_scaling& s);

}  // namespace morsecone
