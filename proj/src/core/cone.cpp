#include "core/cone.hpp"

#include <algorithm>
#include <string>

namespace morsecone {

namespace {

std::string shape(const rational_matrix& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

}  // namespace

void check_pair(const chain_map_pair& p) {
  if (p.m < 0) throw validation_error("grading error: negative top degree");
  if (p.ell < 0) throw validation_error("grading error: negative ell");
  if (p.mu.size() != static_cast<size_t>(p.m + 1) ||
      p.partial.size() != static_cast<size_t>(p.m + 1) ||
      p.cone_map.size() != static_cast<size_t>(p.m + 1))
    throw validation_error("grading error: per-degree data must cover degrees 0..m");

  for (int k = 0; k <= p.m; ++k) {
    const rational_matrix& d = p.partial[static_cast<size_t>(k)];
    if (d.cols() != p.dim(k) || d.rows() != p.dim(k + 1))
      throw validation_error("grading error: partial at degree " + std::to_string(k) +
                             " has shape " + shape(d));
    const rational_matrix& c = p.cone_map[static_cast<size_t>(k)];
    if (c.cols() != p.dim(k) || c.rows() != p.dim(k + p.ell))
      throw validation_error("grading error: cone map at degree " + std::to_string(k) +
                             " has shape " + shape(c));
  }
  for (int k = 0; k + 1 <= p.m; ++k) {
    if (!(p.partial[static_cast<size_t>(k + 1)] * p.partial[static_cast<size_t>(k)]).is_zero())
      throw validation_error("nilpotency violation at degree " + std::to_string(k));
  }
  // partial cone_map = (-1)^ell cone_map partial, checked per source degree.
  rat sign = (p.ell % 2 == 0) ? rat(1) : rat(-1);
  for (int k = 0; k <= p.m; ++k) {
    int kl = k + p.ell;
    rational_matrix lhs = (kl <= p.m ? p.partial[static_cast<size_t>(kl)]
                                     : rational_matrix(0, p.dim(kl))) *
                          p.cone_map[static_cast<size_t>(k)];
    rational_matrix rhs_map = (k + 1 <= p.m) ? p.cone_map[static_cast<size_t>(k + 1)]
                                             : rational_matrix(p.dim(k + 1 + p.ell), 0);
    rational_matrix rhs = sign * (rhs_map * p.partial[static_cast<size_t>(k)]);
    if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() || lhs != rhs)
      throw validation_error("anticommutation violation at degree " + std::to_string(k));
  }
}

graded_complex base_complex(const chain_map_pair& p) {
  std::vector<int> dims(p.mu.begin(), p.mu.end());
  std::vector<rational_matrix> diffs(p.partial.begin(), p.partial.end());
  return graded_complex(0, std::move(dims), std::move(diffs));
}

graded_complex mapping_cone(const chain_map_pair& p) {
  if (p.ell < 0) throw validation_error("grading error: negative ell");
  for (int k = 0; k <= p.m; ++k) {
    const rational_matrix& d = p.partial[static_cast<size_t>(k)];
    const rational_matrix& c = p.cone_map[static_cast<size_t>(k)];
    if (d.cols() != p.dim(k) || d.rows() != p.dim(k + 1) || c.cols() != p.dim(k) ||
        c.rows() != p.dim(k + p.ell))
      throw validation_error("invalid cone data: block shapes at degree " + std::to_string(k));
  }

  // For ell >= 1 the top nonzero degree is m+ell-1. For ell = 0 the first
  // summand still reaches degree m, so the window extends there; stopping at
  // m-1 would truncate a nonzero space and break cohomology at the top.
  const int lo = -1;
  const int hi = std::max(p.m, p.m + p.ell - 1);
  auto second_deg = [&](int k) { return k - p.ell + 1; };

  std::vector<int> dims;
  for (int k = lo; k <= hi; ++k) dims.push_back(p.dim(k) + p.dim(second_deg(k)));

  auto part = [&](int k) {
    return (k >= 0 && k <= p.m) ? p.partial[static_cast<size_t>(k)]
                                : rational_matrix(p.dim(k + 1), p.dim(k));
  };
  auto cmap = [&](int k) {
    return (k >= 0 && k <= p.m) ? p.cone_map[static_cast<size_t>(k)]
                                : rational_matrix(p.dim(k + p.ell), p.dim(k));
  };

  rat lower_sign = (p.ell % 2 == 0) ? rat(-1) : rat(1);  // (-1)^{ell-1}
  std::vector<rational_matrix> diffs;
  for (int k = lo; k <= hi; ++k) {
    int s = second_deg(k);
    rational_matrix dk(p.dim(k + 1) + p.dim(s + 1), p.dim(k) + p.dim(s));
    const rational_matrix tl = part(k);
    const rational_matrix tr = cmap(s);  // C^{k-ell+1} -> C^{k+1}
    const rational_matrix br = lower_sign * part(s);
    if (tr.rows() != p.dim(k + 1) || tr.cols() != p.dim(s))
      throw validation_error("invalid cone data: cone map block at degree " + std::to_string(k));
    for (int r = 0; r < tl.rows(); ++r)
      for (int c = 0; c < tl.cols(); ++c) dk.at(r, c) = tl.at(r, c);
    for (int r = 0; r < tr.rows(); ++r)
      for (int c = 0; c < tr.cols(); ++c) dk.at(r, p.dim(k) + c) = tr.at(r, c);
    for (int r = 0; r < br.rows(); ++r)
      for (int c = 0; c < br.cols(); ++c) dk.at(p.dim(k + 1) + r, p.dim(k) + c) = br.at(r, c);
    diffs.push_back(std::move(dk));
  }
  return graded_complex(lo, std::move(dims), std::move(diffs));
}

rational_matrix induced_cohomology_map(const chain_map_pair& p, int k) {
  graded_complex base = base_complex(p);
  graded_ints b = cohomology_dims(base);
  int target = k + p.ell;
  if (k < 0 || k > p.m) return rational_matrix(b.at(target), 0);

  rational_matrix reps = cohomology_basis(base, k);
  rational_matrix out(b.at(target), reps.cols());
  if (target > p.m) {
    // Codomain is zero; every class maps to zero.
    return out;
  }
  const rational_matrix& cm = p.cone_map[static_cast<size_t>(k)];
  for (int j = 0; j < reps.cols(); ++j) {
    std::vector<rat> w = mat_vec(cm, reps.col(j));
    std::vector<rat> coords = class_coordinates(base, target, w);
    for (int r = 0; r < out.rows(); ++r) out.at(r, j) = coords[static_cast<size_t>(r)];
  }
  return out;
}

std::vector<cone_decomposition> decompose_cohomology(const chain_map_pair& p) {
  graded_complex base = base_complex(p);
  graded_ints b = cohomology_dims(base);
  graded_complex cone = mapping_cone(p);
  graded_ints bw = cohomology_dims(cone);

  auto induced_rank = [&](int k) {
    if (k < 0 || k > p.m || b.at(k) == 0) return 0;
    return rank_q(induced_cohomology_map(p, k));
  };

  std::vector<cone_decomposition> out;
  for (int k = cone.min_deg(); k <= cone.max_deg(); ++k) {
    cone_decomposition e;
    e.degree = k;
    e.coker_dim = b.at(k) - induced_rank(k - p.ell);
    e.ker_dim = b.at(k - p.ell + 1) - induced_rank(k - p.ell + 1);
    if (e.coker_dim + e.ker_dim != bw.at(k))
      throw validation_error("decomposition mismatch at degree " + std::to_string(k));
    out.push_back(e);
  }
  return out;
}

equality_report morse_equalities(const chain_map_pair& p) {
  graded_complex cone = mapping_cone(p);
  graded_ints rp = rank_profile(cone);
  graded_ints bw = cohomology_dims(cone);

  equality_report rep;
  rep.holds = true;
  for (int k = cone.min_deg(); k <= cone.max_deg(); ++k) {
    equality_row row;
    row.degree = k;
    row.rank = rp.at(k);
    long alt_b = 0, alt_mu = 0;
    for (int j = cone.min_deg(); j <= k; ++j) {
      long s = ((k - j) % 2 == 0) ? 1 : -1;
      alt_b += s * bw.at(j);
      alt_mu += s * (p.dim(j) + p.dim(j - p.ell + 1));
    }
    row.lhs = row.rank + alt_b;
    row.rhs = alt_mu;
    if (row.lhs != row.rhs) rep.holds = false;
    rep.rows.push_back(row);
  }
  return rep;
}

inequality_report morse_inequalities(const chain_map_pair& p) {
  graded_complex cone = mapping_cone(p);
  graded_ints bw = cohomology_dims(cone);

  graded_ints v;  // rank of the cone map out of each base degree
  v.min_deg = 0;
  for (int k = 0; k <= p.m; ++k) v.v.push_back(rank_q(p.cone_map[static_cast<size_t>(k)]));

  inequality_report rep;
  rep.holds = true;
  for (int k = cone.min_deg(); k <= cone.max_deg(); ++k) {
    inequality_row row;
    row.degree = k;
    long alt_b = 0, alt_rhs = 0;
    for (int j = cone.min_deg(); j <= k; ++j) {
      long s = ((k - j) % 2 == 0) ? 1 : -1;
      alt_b += s * bw.at(j);
      alt_rhs += s * (p.dim(j) - v.at(j - p.ell) + p.dim(j - p.ell + 1) - v.at(j - p.ell + 1));
    }
    row.lhs = alt_b;
    row.rhs = alt_rhs;
    row.slack = row.rhs - row.lhs;
    if (row.slack < 0) rep.holds = false;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace morsecone
