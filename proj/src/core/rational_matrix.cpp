#include "core/rational_matrix.hpp"

#include <cctype>
#include <sstream>

#include "common/errors.hpp"

namespace morsecone {

rat rat_from_string(const std::string& s) {
  std::string t = s;
  if (!t.empty() && t[0] == '+') t = t.substr(1);
  if (t.empty()) throw io_error("empty rational literal");
  for (char c : t) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
      throw io_error("bad rational literal '" + s + "'");
  }
  try {
    rat q(t);
    if (q.get_den() == 0) throw io_error("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw io_error("bad rational literal '" + s + "'");
  }
}

std::string rat_to_string(const rat& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

rational_matrix::rational_matrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw validation_error("negative matrix shape");
  a_.assign(static_cast<size_t>(rows) * cols, rat(0));
}

rational_matrix rational_matrix::identity(int n) {
  rational_matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

rat& rational_matrix::at(int r, int c) {
  return a_[static_cast<size_t>(r) * cols_ + c];
}

const rat& rational_matrix::at(int r, int c) const {
  return a_[static_cast<size_t>(r) * cols_ + c];
}

bool rational_matrix::is_zero() const {
  for (const rat& q : a_)
    if (q != 0) return false;
  return true;
}

rational_matrix rational_matrix::transpose() const {
  rational_matrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

std::vector<rat> rational_matrix::col(int c) const {
  std::vector<rat> v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

void rational_matrix::set_col(int c, const std::vector<rat>& v) {
  for (int r = 0; r < rows_; ++r) at(r, c) = v[r];
}

bool rational_matrix::operator==(const rational_matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < a_.size(); ++i)
    if (a_[i] != o.a_[i]) return false;
  return true;
}

rational_matrix operator*(const rational_matrix& a, const rational_matrix& b) {
  if (a.cols() != b.rows()) throw validation_error("matrix product shape mismatch");
  rational_matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const rat& aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) {
        if (b.at(k, j) != 0) c.at(i, j) += aik * b.at(k, j);
      }
    }
  return c;
}

rational_matrix operator+(const rational_matrix& a, const rational_matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw validation_error("matrix sum shape mismatch");
  rational_matrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) + b.at(i, j);
  return c;
}

rational_matrix operator-(const rational_matrix& a, const rational_matrix& b) {
  return a + (-b);
}

rational_matrix operator-(const rational_matrix& a) {
  rational_matrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = -a.at(i, j);
  return c;
}

rational_matrix operator*(const rat& s, const rational_matrix& a) {
  rational_matrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = s * a.at(i, j);
  return c;
}

std::vector<rat> mat_vec(const rational_matrix& a, const std::vector<rat>& v) {
  if (static_cast<int>(v.size()) != a.cols())
    throw validation_error("matrix apply shape mismatch");
  std::vector<rat> w(a.rows(), rat(0));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (a.at(i, j) != 0) w[i] += a.at(i, j) * v[j];
  return w;
}

rational_matrix hcat(const rational_matrix& a, const rational_matrix& b) {
  if (a.rows() != b.rows()) throw validation_error("hcat shape mismatch");
  rational_matrix c(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols(); ++j) c.at(i, a.cols() + j) = b.at(i, j);
  }
  return c;
}

rref_result rref(const rational_matrix& a) {
  rref_result res{a, {}};
  rational_matrix& m = res.mat;
  int pr = 0;  // next pivot row
  for (int c = 0; c < m.cols() && pr < m.rows(); ++c) {
    int piv = -1;
    for (int r = pr; r < m.rows(); ++r) {
      if (m.at(r, c) != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != pr) {
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(pr, j));
    }
    rat inv = 1 / m.at(pr, c);
    for (int j = c; j < m.cols(); ++j) m.at(pr, j) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == pr || m.at(r, c) == 0) continue;
      rat f = m.at(r, c);
      for (int j = c; j < m.cols(); ++j) m.at(r, j) -= f * m.at(pr, j);
    }
    res.pivot_cols.push_back(c);
    ++pr;
  }
  return res;
}

int rank_q(const rational_matrix& a) {
  return static_cast<int>(rref(a).pivot_cols.size());
}

rational_matrix kernel_basis(const rational_matrix& a) {
  rref_result r = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : r.pivot_cols) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  rational_matrix k(a.cols(), static_cast<int>(free_cols.size()));
  for (size_t j = 0; j < free_cols.size(); ++j) {
    int f = free_cols[j];
    k.at(f, static_cast<int>(j)) = 1;
    for (size_t p = 0; p < r.pivot_cols.size(); ++p)
      k.at(r.pivot_cols[p], static_cast<int>(j)) = -r.mat.at(static_cast<int>(p), f);
  }
  return k;
}

std::optional<std::vector<rat>> solve(const rational_matrix& a, const std::vector<rat>& b) {
  if (static_cast<int>(b.size()) != a.rows()) throw validation_error("solve shape mismatch");
  rational_matrix aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  rref_result r = rref(aug);
  for (int c : r.pivot_cols)
    if (c == a.cols()) return std::nullopt;  // pivot in the augmented column
  std::vector<rat> x(a.cols(), rat(0));
  for (size_t p = 0; p < r.pivot_cols.size(); ++p)
    x[r.pivot_cols[p]] = r.mat.at(static_cast<int>(p), a.cols());
  return x;
}

rational_matrix inverse(const rational_matrix& a) {
  if (a.rows() != a.cols()) throw numeric_error("inverse of non-square matrix");
  rational_matrix aug = hcat(a, rational_matrix::identity(a.rows()));
  rref_result r = rref(aug);
  if (static_cast<int>(r.pivot_cols.size()) != a.rows() ||
      (a.rows() > 0 && r.pivot_cols.back() >= a.rows()))
    throw numeric_error("singular matrix has no inverse");
  rational_matrix inv(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) inv.at(i, j) = r.mat.at(i, a.cols() + j);
  return inv;
}

}  // namespace morsecone
