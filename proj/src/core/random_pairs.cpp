#include "core/random_pairs.hpp"

#include <algorithm>
#include <vector>

#include "common/errors.hpp"

namespace morsecone {

rational_matrix random_unimodular(int n, std::mt19937_64& rng, int shears) {
  rational_matrix g = rational_matrix::identity(n);
  if (n < 2) return g;
  if (shears < 0) shears = 2 * n;
  std::uniform_int_distribution<int> row(0, n - 1);
  std::uniform_int_distribution<int> amt(-2, 2);
  for (int s = 0; s < shears; ++s) {
    int i = row(rng), j = row(rng);
    if (i == j) {
      for (int c = 0; c < n; ++c) std::swap(g.at(i, c), g.at((i + 1) % n, c));
      continue;
    }
    rat a(amt(rng));
    for (int c = 0; c < n; ++c) g.at(i, c) += a * g.at(j, c);
  }
  return g;
}

chain_map_pair random_pair(std::mt19937_64& rng, const pair_gen_options& opt) {
  chain_map_pair p;
  std::uniform_int_distribution<int> mdist(opt.m_min, opt.m_max);
  p.m = mdist(rng);
  p.ell = opt.ell >= 0 ? opt.ell : std::uniform_int_distribution<int>(0, p.m)(rng);

  std::uniform_int_distribution<int> mudist(1, opt.mu_max);
  p.mu.resize(static_cast<size_t>(p.m) + 1);
  for (auto& mu : p.mu) mu = mudist(rng);

  // Rank profile: r[k] = rank of the differential leaving degree k, with
  // r[k-1] + r[k] <= mu[k] so image and coexact slots fit side by side.
  std::vector<int> r(static_cast<size_t>(p.m) + 1, 0);
  for (int k = 0; k < p.m; ++k) {
    int prev = k > 0 ? r[static_cast<size_t>(k - 1)] : 0;
    int cap = std::min(p.mu[static_cast<size_t>(k)] - prev, p.mu[static_cast<size_t>(k + 1)]);
    if (cap < 0) cap = 0;
    r[static_cast<size_t>(k)] = std::uniform_int_distribution<int>(0, cap)(rng);
  }
  // Clamp against the next degree's capacity (r[k] + r[k+1] <= mu[k+1]).
  for (int k = p.m - 1; k >= 0; --k) {
    int next = r[static_cast<size_t>(k + 1)];
    int room = p.mu[static_cast<size_t>(k + 1)] - next;
    if (r[static_cast<size_t>(k)] > room) r[static_cast<size_t>(k)] = std::max(0, room);
  }

  // Canonical slot differential: last r[k] coordinates of degree k map onto
  // the first r[k] coordinates of degree k+1.
  std::vector<rational_matrix> canon;
  for (int k = 0; k <= p.m; ++k) {
    rational_matrix e(p.dim(k + 1), p.mu[static_cast<size_t>(k)]);
    if (k < p.m)
      for (int j = 0; j < r[static_cast<size_t>(k)]; ++j)
        e.at(j, p.mu[static_cast<size_t>(k)] - r[static_cast<size_t>(k)] + j) = 1;
    canon.push_back(std::move(e));
  }

  std::vector<rational_matrix> g, ginv;
  for (int k = 0; k <= p.m; ++k) {
    g.push_back(random_unimodular(p.mu[static_cast<size_t>(k)], rng));
    ginv.push_back(inverse(g.back()));
  }
  for (int k = 0; k <= p.m; ++k) {
    rational_matrix d = canon[static_cast<size_t>(k)] * ginv[static_cast<size_t>(k)];
    if (k < p.m) d = g[static_cast<size_t>(k + 1)] * d;
    p.partial.push_back(std::move(d));
  }

  // Cone map from the exact solution space of
  //   partial_{k+ell} C_k = (-1)^ell C_{k+1} partial_k.
  // Unknowns: entries of every C_k whose codomain degree k+ell lands in
  // [0, m]; the rest are zero-row matrices with nothing to choose.
  std::vector<int> offset(static_cast<size_t>(p.m) + 1, 0);
  int nunk = 0;
  for (int k = 0; k <= p.m; ++k) {
    offset[static_cast<size_t>(k)] = nunk;
    nunk += p.dim(k + p.ell) * p.dim(k);
  }
  auto unk = [&](int k, int row, int col) {
    return offset[static_cast<size_t>(k)] + row * p.dim(k) + col;
  };

  int nrows = 0;
  for (int k = 0; k <= p.m; ++k) nrows += p.dim(k + p.ell + 1) * p.dim(k);
  rational_matrix constraints(nrows, nunk);
  rat sign(p.ell % 2 == 0 ? 1 : -1);
  int row_at = 0;
  for (int k = 0; k <= p.m; ++k) {
    // dim(k+ell+1) > 0 forces k+ell into [0, m-1], so partial[k+ell] exists
    // whenever the row loop runs.
    for (int i = 0; i < p.dim(k + p.ell + 1); ++i) {
      const rational_matrix& d_hi = p.partial[static_cast<size_t>(k + p.ell)];
      for (int j = 0; j < p.dim(k); ++j) {
        for (int s = 0; s < p.dim(k + p.ell); ++s)
          if (d_hi.at(i, s) != 0) constraints.at(row_at, unk(k, s, j)) += d_hi.at(i, s);
        if (k + 1 <= p.m) {
          const rational_matrix& d_lo = p.partial[static_cast<size_t>(k)];
          for (int t = 0; t < p.dim(k + 1); ++t)
            if (d_lo.at(t, j) != 0)
              constraints.at(row_at, unk(k + 1, i, t)) -= sign * d_lo.at(t, j);
        }
        ++row_at;
      }
    }
  }

  rational_matrix sol = kernel_basis(constraints);
  std::vector<rat> x(static_cast<size_t>(nunk), rat(0));
  if (sol.cols() > 0) {
    std::uniform_int_distribution<int> cdist(-opt.coeff, opt.coeff);
    for (int attempt = 0; attempt < 4; ++attempt) {
      std::fill(x.begin(), x.end(), rat(0));
      for (int c = 0; c < sol.cols(); ++c) {
        rat w(cdist(rng));
        if (w == 0) continue;
        for (int rr = 0; rr < sol.rows(); ++rr) x[static_cast<size_t>(rr)] += w * sol.at(rr, c);
      }
      bool nonzero = false;
      for (const auto& v : x) nonzero = nonzero || v != 0;
      if (nonzero) break;
    }
  }

  for (int k = 0; k <= p.m; ++k) {
    rational_matrix c(p.dim(k + p.ell), p.dim(k));
    for (int i = 0; i < c.rows(); ++i)
      for (int j = 0; j < c.cols(); ++j) c.at(i, j) = x[static_cast<size_t>(unk(k, i, j))];
    p.cone_map.push_back(std::move(c));
  }
  return p;
}

}  // namespace morsecone
