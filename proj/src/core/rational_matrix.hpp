#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace morsecone {

using rat = mpq_class;

// Parse "num" or "num/den"; the result is canonical (lowest terms, positive
// denominator), so "2/4" comes back as 1/2. Throws io_error on junk.
rat rat_from_string(const std::string& s);
std::string rat_to_string(const rat& q);

/*
 * Dense matrix over exact rationals. mpq semantics keep every entry in
 * lowest terms with a positive denominator. Degenerate shapes (0 x n, n x 0)
 * are legal and have rank 0; graded complexes lean on that for empty degrees.
 */
class rational_matrix {
 public:
  rational_matrix() = default;
  rational_matrix(int rows, int cols);
  static rational_matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  rat& at(int r, int c);
  const rat& at(int r, int c) const;

  bool is_zero() const;
  rational_matrix transpose() const;

  std::vector<rat> col(int c) const;
  void set_col(int c, const std::vector<rat>& v);

  bool operator==(const rational_matrix& o) const;
  bool operator!=(const rational_matrix& o) const { return !(*this == o); }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<rat> a_;
};

rational_matrix operator*(const rational_matrix& a, const rational_matrix& b);
rational_matrix operator+(const rational_matrix& a, const rational_matrix& b);
rational_matrix operator-(const rational_matrix& a, const rational_matrix& b);
rational_matrix operator-(const rational_matrix& a);
rational_matrix operator*(const rat& s, const rational_matrix& a);

std::vector<rat> mat_vec(const rational_matrix& a, const std::vector<rat>& v);
rational_matrix hcat(const rational_matrix& a, const rational_matrix& b);

struct rref_result {
  rational_matrix mat;
  std::vector<int> pivot_cols;  // ascending, one per pivot row
};

// Reduced row echelon form with leftmost-nonzero pivoting. Deterministic:
// repeated calls on equal input give identical output.
rref_result rref(const rational_matrix& a);

int rank_q(const rational_matrix& a);

/*
 * Kernel basis as matrix columns, one per free column of the RREF, ordered by
 * free column index. The ordering is part of the contract: cohomology
 * representative selection downstream scans these columns in order
 * (first-kernel-pivot convention) and must be reproducible.
 */
rational_matrix kernel_basis(const rational_matrix& a);

// Exact solve of a x = b; nullopt when inconsistent. With a of full column
// rank the solution is unique.
std::optional<std::vector<rat>> solve(const rational_matrix& a, const std::vector<rat>& b);

rational_matrix inverse(const rational_matrix& a);  // throws numeric_error on singular input

}  // namespace morsecone
