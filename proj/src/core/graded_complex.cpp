#include "core/graded_complex.hpp"

#include <string>

namespace morsecone {

graded_complex::graded_complex(int min_deg, std::vector<int> dims,
                               std::vector<rational_matrix> diffs)
    : min_deg_(min_deg), dims_(std::move(dims)), d_(std::move(diffs)) {
  if (d_.size() != dims_.size())
    throw validation_error("grading error: one differential required per degree");
  for (size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i] < 0) throw validation_error("grading error: negative dimension");
    int cod = (i + 1 < dims_.size()) ? dims_[i + 1] : 0;
    if (d_[i].cols() != dims_[i] || d_[i].rows() != cod)
      throw validation_error("grading error: differential at degree " +
                             std::to_string(min_deg_ + static_cast<int>(i)) + " has shape " +
                             std::to_string(d_[i].rows()) + "x" + std::to_string(d_[i].cols()) +
                             ", expected " + std::to_string(cod) + "x" +
                             std::to_string(dims_[i]));
  }
}

int graded_complex::dim(int k) const {
  int i = k - min_deg_;
  if (i < 0 || i >= static_cast<int>(dims_.size())) return 0;
  return dims_[static_cast<size_t>(i)];
}

rational_matrix graded_complex::d(int k) const {
  int i = k - min_deg_;
  if (i < 0 || i >= static_cast<int>(d_.size())) return rational_matrix(dim(k + 1), dim(k));
  return d_[static_cast<size_t>(i)];
}

void graded_complex::check() const {
  for (size_t i = 0; i + 1 < d_.size(); ++i) {
    if (!(d_[i + 1] * d_[i]).is_zero())
      throw validation_error("nilpotency violation at degree " +
                             std::to_string(min_deg_ + static_cast<int>(i)));
  }
}

graded_ints rank_profile(const graded_complex& c) {
  graded_ints r;
  r.min_deg = c.min_deg();
  for (int k = c.min_deg(); k <= c.max_deg(); ++k) r.v.push_back(rank_q(c.d(k)));
  return r;
}

graded_ints cohomology_dims(const graded_complex& c) {
  graded_ints b;
  b.min_deg = c.min_deg();
  graded_ints r = rank_profile(c);
  for (int k = c.min_deg(); k <= c.max_deg(); ++k) {
    int ker = c.dim(k) - r.at(k);
    b.v.push_back(ker - r.at(k - 1));
  }
  return b;
}

namespace {

// Incremental elimination state used to pick independent columns.
struct span_builder {
  std::vector<std::vector<rat>> rows;  // reduced vectors
  std::vector<int> pivots;             // pivot position per stored vector

  // Returns true and absorbs v when v is independent of the current span.
  bool add(std::vector<rat> v) {
    for (size_t i = 0; i < rows.size(); ++i) {
      const rat& lead = v[static_cast<size_t>(pivots[i])];
      if (lead != 0) {
        rat f = lead;  // stored rows are normalized to pivot 1
        for (size_t j = 0; j < v.size(); ++j) v[j] -= f * rows[i][j];
      }
    }
    int p = -1;
    for (size_t j = 0; j < v.size(); ++j) {
      if (v[j] != 0) {
        p = static_cast<int>(j);
        break;
      }
    }
    if (p < 0) return false;
    rat inv = 1 / v[static_cast<size_t>(p)];
    for (size_t j = 0; j < v.size(); ++j) v[j] *= inv;
    rows.push_back(std::move(v));
    pivots.push_back(p);
    return true;
  }
};

}  // namespace

rational_matrix cohomology_basis(const graded_complex& c, int k) {
  const rational_matrix dk = c.d(k);
  const rational_matrix dprev = c.d(k - 1);

  span_builder span;
  rref_result rp = rref(dprev);
  for (int pc : rp.pivot_cols) span.add(dprev.col(pc));

  rational_matrix ker = kernel_basis(dk);
  std::vector<int> kept;
  for (int j = 0; j < ker.cols(); ++j) {
    if (span.add(ker.col(j))) kept.push_back(j);
  }
  rational_matrix reps(c.dim(k), static_cast<int>(kept.size()));
  for (size_t j = 0; j < kept.size(); ++j) reps.set_col(static_cast<int>(j), ker.col(kept[j]));
  return reps;
}

std::vector<rat> class_coordinates(const graded_complex& c, int k, const std::vector<rat>& w) {
  if (static_cast<int>(w.size()) != c.dim(k))
    throw validation_error("class_coordinates: vector has wrong degree-" + std::to_string(k) +
                           " dimension");
  // Cocycle test first, then expression in [image | representatives].
  std::vector<rat> dw = mat_vec(c.d(k), w);
  for (const rat& q : dw)
    if (q != 0) throw numeric_error("not a cocycle image");

  const rational_matrix dprev = c.d(k - 1);
  rref_result rp = rref(dprev);
  rational_matrix im(c.dim(k), static_cast<int>(rp.pivot_cols.size()));
  for (size_t j = 0; j < rp.pivot_cols.size(); ++j)
    im.set_col(static_cast<int>(j), dprev.col(rp.pivot_cols[j]));

  rational_matrix reps = cohomology_basis(c, k);
  auto x = solve(hcat(im, reps), w);
  if (!x) throw numeric_error("not a cocycle image");
  std::vector<rat> coords(x->begin() + im.cols(), x->end());
  return coords;
}

}  // namespace morsecone
