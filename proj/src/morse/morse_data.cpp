#include "morse/morse_data.hpp"

#include <map>
#include <string>
#include <vector>

#include "common/errors.hpp"

namespace morsecone {
namespace {

const critical_point* find_point(const morse_data& d, const std::string& id) {
  for (const auto& p : d.points)
    if (p.id == id) return &p;
  return nullptr;
}

}  // namespace

std::vector<int> mu_counts(const morse_data& d) {
  std::vector<int> mu(static_cast<size_t>(d.m) + 1, 0);
  for (const auto& p : d.points) mu[static_cast<size_t>(p.index)]++;
  return mu;
}

void validate(const morse_data& d) {
  if (d.m < 0) throw validation_error("validation error: manifold_dim is negative");
  if (d.ell < 0 || d.ell > d.m)
    throw validation_error("validation error: ell " + std::to_string(d.ell) +
                           " outside [0, " + std::to_string(d.m) + "]");
  std::map<std::string, int> seen;
  for (const auto& p : d.points) {
    if (p.id.empty()) throw validation_error("validation error: empty point id");
    if (++seen[p.id] > 1)
      throw validation_error("validation error: duplicate point id '" + p.id + "'");
    if (p.index < 0 || p.index > d.m)
      throw validation_error("validation error: point '" + p.id + "' has index " +
                             std::to_string(p.index) + " outside [0, " +
                             std::to_string(d.m) + "]");
  }
  auto check_entries = [&](const std::vector<matrix_entry>& es, int step, const char* kind) {
    for (const auto& e : es) {
      const critical_point* to = find_point(d, e.to);
      const critical_point* from = find_point(d, e.from);
      if (!to || !from)
        throw validation_error(std::string("validation error: ") + kind + " entry ('" +
                               e.to + "', '" + e.from + "') references an unknown point");
      if (to->index != from->index + step)
        throw validation_error("grading violation: " + std::string(kind) + " entry ('" +
                               e.to + "', '" + e.from + "') steps the index by " +
                               std::to_string(to->index - from->index) + ", expected " +
                               std::to_string(step));
    }
  };
  check_entries(d.boundary, 1, "boundary");
  check_entries(d.cup, d.ell, "cup");

  chain_map_pair pair = to_chain_map_pair(d);

  // Nilpotency, reported against point ids. The first offending pair in
  // declaration order (q of index k+2, p of index k) names the failure.
  for (int k = 0; k + 1 <= d.m; ++k) {
    rational_matrix sq = pair.partial[static_cast<size_t>(k + 1)] *
                         pair.partial[static_cast<size_t>(k)];
    if (sq.is_zero()) continue;
    std::vector<const critical_point*> rows, cols;
    for (const auto& p : d.points) {
      if (p.index == k + 2) rows.push_back(&p);
      if (p.index == k) cols.push_back(&p);
    }
    for (int r = 0; r < sq.rows(); ++r)
      for (int c = 0; c < sq.cols(); ++c)
        if (sq.at(r, c) != 0)
          throw validation_error("nilpotency violation at ('" +
                                 rows[static_cast<size_t>(r)]->id + "', '" +
                                 cols[static_cast<size_t>(c)]->id + "')");
  }

  check_pair(pair);
}

chain_map_pair to_chain_map_pair(const morse_data& d) {
  if (d.m < 0) throw validation_error("validation error: manifold_dim is negative");
  chain_map_pair pair;
  pair.m = d.m;
  pair.ell = d.ell;
  pair.mu = mu_counts(d);

  // Position of each point within its degree, declaration order.
  std::map<std::string, std::pair<int, int>> slot;  // id -> (index, position)
  {
    std::vector<int> next(static_cast<size_t>(d.m) + 1, 0);
    for (const auto& p : d.points) {
      if (p.index < 0 || p.index > d.m)
        throw validation_error("validation error: point '" + p.id + "' has index " +
                               std::to_string(p.index) + " outside [0, " +
                               std::to_string(d.m) + "]");
      slot[p.id] = {p.index, next[static_cast<size_t>(p.index)]++};
    }
  }

  auto dim = [&](int k) { return (k < 0 || k > d.m) ? 0 : pair.mu[static_cast<size_t>(k)]; };
  for (int k = 0; k <= d.m; ++k) {
    pair.partial.emplace_back(dim(k + 1), dim(k));
    pair.cone_map.emplace_back(dim(k + d.ell), dim(k));
  }

  auto place = [&](const std::vector<matrix_entry>& es, std::vector<rational_matrix>& mats,
                   int step, const char* kind) {
    for (const auto& e : es) {
      auto it_to = slot.find(e.to);
      auto it_from = slot.find(e.from);
      if (it_to == slot.end() || it_from == slot.end())
        throw validation_error(std::string("validation error: ") + kind + " entry ('" +
                               e.to + "', '" + e.from + "') references an unknown point");
      auto [ki, ri] = it_to->second;
      auto [kj, cj] = it_from->second;
      if (ki != kj + step)
        throw validation_error("grading violation: " + std::string(kind) + " entry ('" +
                               e.to + "', '" + e.from + "') steps the index by " +
                               std::to_string(ki - kj) + ", expected " + std::to_string(step));
      mats[static_cast<size_t>(kj)].at(ri, cj) += e.coeff;
    }
  };
  place(d.boundary, pair.partial, 1, "boundary");
  place(d.cup, pair.cone_map, d.ell, "cup");
  return pair;
}

morse_data builtin_dataset(const std::string& name) {
  morse_data d;
  if (name == "s2_height_area") {
    // Height function on the round two sphere, wedged with the area form
    // normalized to total area 1. Two critical points, no boundary, and the
    // cone map sends the minimum's generator onto the maximum's with weight
    // equal to the full area.
    d.m = 2;
    d.ell = 2;
    d.points = {{"min", 0, rat(-1)}, {"max", 2, rat(1)}};
    d.cup = {{"max", "min", rat(1)}};
    return d;
  }
  if (name == "t2_cos_dx" || name == "t2_cos_zero") {
    // f(x, y) = cos(2 pi x) + cos(2 pi y) on the flat unit torus: one
    // minimum, two saddles, one maximum, all boundary operators zero. For
    // the _dx variant the wedged 1-form is dx (period 1 both ways): it pairs
    // the minimum with the saddle whose unstable circle runs in x, and the
    // other saddle with the maximum, orientations chosen so both weights
    // are +1. The _zero variant wedges the zero form instead.
    d.m = 2;
    d.ell = 1;
    d.points = {{"m", 0, rat(-2)},
                {"s_x", 1, rat(0)},
                {"s_y", 1, rat(0)},
                {"M", 2, rat(2)}};
    if (name == "t2_cos_dx") d.cup = {{"s_x", "m", rat(1)}, {"M", "s_y", rat(1)}};
    return d;
  }
  throw io_error("unknown builtin dataset '" + name + "'");
}

std::vector<std::string> builtin_names() {
  return {"s2_height_area", "t2_cos_dx", "t2_cos_zero"};
}

}  // namespace morsecone
