#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "common/errors.hpp"
#include "morse/morse_data.hpp"

namespace morsecone {
namespace {

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
  throw io_error(origin + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

morse_data load_dataset(std::istream& in, const std::string& origin) {
  morse_data d;
  bool saw_schema = false, saw_dim = false, saw_ell = false;
  std::map<std::string, int> index_of;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;

    auto want_int = [&](const char* what) {
      long long v;
      if (!(ls >> v)) fail(origin, lineno, std::string("expected an integer ") + what);
      return static_cast<int>(v);
    };
    auto want_word = [&](const char* what) {
      std::string w;
      if (!(ls >> w)) fail(origin, lineno, std::string("expected ") + what);
      return w;
    };
    auto want_rat = [&](const char* what) {
      std::string w = want_word(what);
      try {
        return rat_from_string(w);
      } catch (const io_error& e) {
        fail(origin, lineno, e.what());
      }
    };
    auto no_trailing = [&] {
      std::string extra;
      if (ls >> extra) fail(origin, lineno, "trailing token '" + extra + "'");
    };

    if (tok == "schema") {
      int v = want_int("schema version");
      if (v != 1) fail(origin, lineno, "unsupported schema version " + std::to_string(v));
      saw_schema = true;
      d.schema = v;
      no_trailing();
    } else if (tok == "manifold_dim") {
      d.m = want_int("manifold dimension");
      saw_dim = true;
      no_trailing();
    } else if (tok == "ell") {
      d.ell = want_int("form degree");
      saw_ell = true;
      no_trailing();
    } else if (tok == "point") {
      std::string id = want_word("a point id");
      if (index_of.count(id)) fail(origin, lineno, "duplicate point id '" + id + "'");
      int index = want_int("index after the point id");
      critical_point p{id, index, std::nullopt};
      std::string rest;
      if (ls >> rest) {
        try {
          p.value = rat_from_string(rest);
        } catch (const io_error& e) {
          fail(origin, lineno, e.what());
        }
        no_trailing();
      }
      index_of[id] = index;
      d.points.push_back(std::move(p));
    } else if (tok == "boundary" || tok == "cup") {
      std::string to = want_word("a target point id");
      std::string from = want_word("a source point id");
      rat coeff = want_rat("a rational coefficient");
      no_trailing();
      if (!index_of.count(to))
        fail(origin, lineno, tok + " entry references undeclared point '" + to + "'");
      if (!index_of.count(from))
        fail(origin, lineno, tok + " entry references undeclared point '" + from + "'");
      matrix_entry e{to, from, coeff};
      (tok == "boundary" ? d.boundary : d.cup).push_back(std::move(e));
    } else {
      fail(origin, lineno, "unknown directive '" + tok + "'");
    }
  }
  if (!saw_schema) throw io_error(origin + ": missing 'schema' directive");
  if (!saw_dim) throw io_error(origin + ": missing 'manifold_dim' directive");
  if (!saw_ell) throw io_error(origin + ": missing 'ell' directive");
  return d;
}

morse_data load_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open dataset file '" + path + "'");
  return load_dataset(in, path);
}

void save_dataset(const morse_data& d, std::ostream& out) {
  out << "schema " << d.schema << "\n";
  out << "manifold_dim " << d.m << "\n";
  out << "ell " << d.ell << "\n";
  for (const auto& p : d.points) {
    out << "point " << p.id << " " << p.index;
    if (p.value) out << " " << rat_to_string(*p.value);
    out << "\n";
  }
  for (const auto& e : d.boundary)
    out << "boundary " << e.to << " " << e.from << " " << rat_to_string(e.coeff) << "\n";
  for (const auto& e : d.cup)
    out << "cup " << e.to << " " << e.from << " " << rat_to_string(e.coeff) << "\n";
}

void save_dataset_file(const morse_data& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  save_dataset(d, out);
}

}  // namespace morsecone
