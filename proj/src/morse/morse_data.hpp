#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "core/cone.hpp"

namespace morsecone {

struct critical_point {
  std::string id;
  int index = 0;
  std::optional<rat> value;  // f(p), reporting only
};

// One matrix coefficient, indexed by point ids: coefficient of `to` in the
// image of `from`.
struct matrix_entry {
  std::string to;
  std::string from;
  rat coeff;
};

/*
 * Combinatorial dataset: critical points with indices, boundary coefficients
 * (index gap exactly 1) and cone-map coefficients (index gap exactly ell).
 * Basis order within a degree is declaration order of the points. Loading a
 * dataset does not run validate(); callers decide when to pay for the exact
 * checks.
 */
struct morse_data {
  int schema = 1;
  int m = 0;    // manifold dimension, top degree
  int ell = 0;  // degree of the wedged closed form
  std::vector<critical_point> points;
  std::vector<matrix_entry> boundary;
  std::vector<matrix_entry> cup;
};

// Counts of critical points per index 0..m.
std::vector<int> mu_counts(const morse_data& d);

/*
 * Exact structural checks:
 *   - ids unique, indices within [0, m], entries referencing known ids
 *   - boundary entries step the index by exactly 1, cup entries by exactly
 *     ell ("grading violation ...")
 *   - boundary squares to zero ("nilpotency violation at ('q', 'p')" naming
 *     the first offending pair in declaration order)
 *   - boundary and cup anticommute with sign (-1)^ell
 *     ("anticommutation violation at degree k")
 */
void validate(const morse_data& d);

// Matrix form of the dataset, basis order = declaration order per degree.
// Performs the grading checks (it cannot even place entries otherwise) but
// not the nilpotency/anticommutation ones.
chain_map_pair to_chain_map_pair(const morse_data& d);

// Builtin datasets: "s2_height_area", "t2_cos_dx", "t2_cos_zero".
// Throws io_error for unknown names.
morse_data builtin_dataset(const std::string& name);
std::vector<std::string> builtin_names();

// Text serialization. Format (one directive per line, '#' comments):
//   schema 1
//   manifold_dim 2
//   ell 1
//   point <id> <index> [value]
//   boundary <to_id> <from_id> <coeff>
//   cup <to_id> <from_id> <coeff>
// Coefficients are "num" or "num/den" and are normalized on load. Points
// must be declared before entries referencing them. Parse failures throw
// io_error with a line diagnostic; duplicate point ids are parse errors
// naming the id.
morse_data load_dataset(std::istream& in, const std::string& origin = "<stream>");
morse_data load_dataset_file(const std::string& path);
void save_dataset(const morse_data& d, std::ostream& out);
void save_dataset_file(const morse_data& d, const std::string& path);

}  // namespace morsecone
