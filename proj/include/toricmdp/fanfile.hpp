#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "toricmdp/fan.hpp"

namespace toricmdp {

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Parsed fan description. Grammar, one directive per line:
///   # comment
///   dim <n>
///   ray <n integers>            (one per ray; order fixes all indexing)
///   cone <n 0-based ray indices>
///   name <identifier>           (optional)
struct FanFile {
  int dim = -1;
  std::vector<IntVector> rays;
  std::vector<std::vector<int>> cones;
  std::string name;
};

inline FanFile parse_fan_file(const std::string& text) {
  FanFile ff;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::vector<int> cone_lines;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    std::istringstream ls(line);
    std::string keyword;
    if (!(ls >> keyword)) continue;
    if (keyword == "dim") {
      if (ff.dim >= 0) throw ParseError(lineno, "duplicate dim directive");
      if (!(ls >> ff.dim) || ff.dim < 1) throw ParseError(lineno, "dim needs a positive integer");
    } else if (keyword == "ray") {
      if (ff.dim < 0) throw ParseError(lineno, "ray before dim");
      std::vector<Int> entries;
      std::string tok;
      while (ls >> tok) {
        try {
          entries.emplace_back(tok);
        } catch (const std::exception&) {
          throw ParseError(lineno, "bad integer '" + tok + "'");
        }
      }
      if (static_cast<int>(entries.size()) != ff.dim)
        throw ParseError(lineno, "ray needs exactly " + std::to_string(ff.dim) + " integers");
      ff.rays.emplace_back(std::move(entries));
    } else if (keyword == "cone") {
      if (ff.dim < 0) throw ParseError(lineno, "cone before dim");
      std::vector<int> idx;
      int v;
      while (ls >> v) idx.push_back(v);
      if (ls.fail() && !ls.eof()) throw ParseError(lineno, "bad cone index");
      if (static_cast<int>(idx.size()) != ff.dim)
        throw ParseError(lineno, "cone needs exactly " + std::to_string(ff.dim) + " indices");
      ff.cones.push_back(std::move(idx));
      cone_lines.push_back(lineno);
    } else if (keyword == "name") {
      ls >> ff.name;
    } else {
      throw ParseError(lineno, "unknown directive '" + keyword + "'");
    }
  }
  if (ff.dim < 0) throw ParseError(lineno, "missing dim");
  if (ff.rays.empty()) throw ParseError(lineno, "missing rays");
  if (ff.cones.empty()) throw ParseError(lineno, "missing cones");
  for (std::size_t k = 0; k < ff.cones.size(); ++k)
    for (int v : ff.cones[k])
      if (v < 0 || v >= static_cast<int>(ff.rays.size()))
        throw ParseError(cone_lines[k],
                         "ray index " + std::to_string(v) + " out of range (have " +
                             std::to_string(ff.rays.size()) + " rays)");
  return ff;
}

inline Fan to_fan(const FanFile& ff) { return Fan(ff.dim, ff.rays, ff.cones); }

}  // namespace toricmdp
