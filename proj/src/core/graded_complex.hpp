#pragma once

#include <vector>

#include "common/errors.hpp"
#include "core/rational_matrix.hpp"

namespace morsecone {

// Integers indexed by degree; degrees outside the stored window read as 0.
struct graded_ints {
  int min_deg = 0;
  std::vector<int> v;

  int at(int k) const {
    int i = k - min_deg;
    if (i < 0 || i >= static_cast<int>(v.size())) return 0;
    return v[static_cast<size_t>(i)];
  }
  int max_deg() const { return min_deg + static_cast<int>(v.size()) - 1; }
};

/*
 * Cochain complex over Q on a finite degree window [min_deg, max_deg].
 * diffs[i] maps degree min_deg+i to min_deg+i+1; the top differential has
 * zero rows. Degrees outside the window are zero dimensional. min_deg = -1
 * is legitimate: mapping cones start there, and with ell = 0 the degree -1
 * slot is genuinely nonzero.
 */
class graded_complex {
 public:
  graded_complex(int min_deg, std::vector<int> dims, std::vector<rational_matrix> diffs);

  int min_deg() const { return min_deg_; }
  int max_deg() const { return min_deg_ + static_cast<int>(dims_.size()) - 1; }
  int dim(int k) const;
  rational_matrix d(int k) const;  // zero-shaped outside the window

  // Shape consistency plus exact nilpotency d_{k+1} d_k = 0.
  // Throws validation_error("grading error ...") on shape trouble and
  // validation_error("nilpotency ...") when a composition fails to vanish.
  void check() const;

 private:
  int min_deg_ = 0;
  std::vector<int> dims_;
  std::vector<rational_matrix> d_;
};

graded_ints rank_profile(const graded_complex& c);     // rank d_k per degree
graded_ints cohomology_dims(const graded_complex& c);  // dim ker d_k - rank d_{k-1}

/*
 * Representative cocycles for H^k as matrix columns. Selection rule
 * (first-kernel-pivot convention): seed an elimination state with the pivot
 * columns of d_{k-1}, then scan the kernel basis columns of d_k in their
 * defined order and keep each one that grows the span. Deterministic, and
 * downstream induced-map matrices depend on this exact choice.
 */
rational_matrix cohomology_basis(const graded_complex& c, int k);

// Coordinates of the class [w] in the basis produced by cohomology_basis.
// w must be a cocycle at degree k; throws numeric_error if it is not in the
// kernel or cannot be expressed (message "not a cocycle image").
std::vector<rat> class_coordinates(const graded_complex& c, int k, const std::vector<rat>& w);

}  // namespace morsecone
