#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "toricmdp/linalg.hpp"

namespace toricmdp {

/// Rational polyhedral cone given by primitive ray generators. A lineality
/// direction is encoded as a +-v pair of generators.
struct Cone {
  int ambient_dim = 0;
  std::vector<IntVector> generators;
};

inline constexpr int kDualConeDimensionBound = 8;

namespace detail {

struct DDRay {
  IntVector v;
  std::set<int> tight;  // indices of processed constraints satisfied with equality
};

inline bool dd_adjacent(const std::vector<DDRay>& rays, std::size_t p, std::size_t q) {
  std::vector<int> common;
  std::set_intersection(rays[p].tight.begin(), rays[p].tight.end(), rays[q].tight.begin(),
                        rays[q].tight.end(), std::back_inserter(common));
  for (std::size_t r = 0; r < rays.size(); ++r) {
    if (r == p || r == q) continue;
    if (std::includes(rays[r].tight.begin(), rays[r].tight.end(), common.begin(), common.end()))
      return false;
  }
  return true;
}

}  // namespace detail

/// Generators of {y : <y,x> >= 0 for all x in C} by incremental double
/// description. Practical ambient bound: dimension <= 8.
inline Cone dual_cone(const Cone& c) {
  int d = c.ambient_dim;
  if (d > kDualConeDimensionBound)
    throw DimensionBoundError("dual_cone: ambient dimension " + std::to_string(d) +
                              " exceeds practical bound " + std::to_string(kDualConeDimensionBound));
  // start from the whole space: a lineality basis and no rays
  std::vector<IntVector> lines;
  for (int i = 0; i < d; ++i) {
    IntVector e(static_cast<std::size_t>(d));
    e[static_cast<std::size_t>(i)] = 1;
    lines.push_back(e);
  }
  std::vector<detail::DDRay> rays;
  for (std::size_t j = 0; j < c.generators.size(); ++j) {
    const IntVector& a = c.generators[j];
    int line_hit = -1;
    for (std::size_t i = 0; i < lines.size(); ++i)
      if (dot(a, lines[i]) != 0) {
        line_hit = static_cast<int>(i);
        break;
      }
    if (line_hit >= 0) {
      IntVector l0 = lines[static_cast<std::size_t>(line_hit)];
      Int v0 = dot(a, l0);
      if (v0 < 0) {
        l0 = -l0;
        v0 = -v0;
      }
      lines.erase(lines.begin() + line_hit);
      for (IntVector& ln : lines) {
        Int vl = dot(a, ln);
        if (vl != 0) ln = (v0 * ln - vl * l0).primitive_part();
      }
      for (detail::DDRay& r : rays) {
        Int vr = dot(a, r.v);
        if (vr != 0) r.v = (v0 * r.v - vr * l0).primitive_part();
        r.tight.insert(static_cast<int>(j));
      }
      detail::DDRay nr;
      nr.v = l0.primitive_part();
      for (std::size_t k = 0; k < j; ++k) nr.tight.insert(static_cast<int>(k));
      rays.push_back(std::move(nr));
      continue;
    }
    // all lines orthogonal to a: split the rays
    std::vector<Int> vals(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) vals[i] = dot(a, rays[i].v);
    std::vector<detail::DDRay> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (vals[i] < 0) continue;
      detail::DDRay r = rays[i];
      if (vals[i] == 0) r.tight.insert(static_cast<int>(j));
      next.push_back(std::move(r));
    }
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (vals[p] <= 0) continue;
      for (std::size_t q = 0; q < rays.size(); ++q) {
        if (vals[q] >= 0) continue;
        if (!detail::dd_adjacent(rays, p, q)) continue;
        detail::DDRay combo;
        combo.v = (vals[p] * rays[q].v - vals[q] * rays[p].v).primitive_part();
        std::set_intersection(rays[p].tight.begin(), rays[p].tight.end(), rays[q].tight.begin(),
                              rays[q].tight.end(), std::inserter(combo.tight, combo.tight.end()));
        combo.tight.insert(static_cast<int>(j));
        next.push_back(std::move(combo));
      }
    }
    rays = std::move(next);
  }
  Cone out;
  out.ambient_dim = d;
  for (const detail::DDRay& r : rays)
    if (!r.v.is_zero()) out.generators.push_back(r.v);
  for (const IntVector& ln : lines) {
    out.generators.push_back(ln);
    out.generators.push_back(-ln);
  }
  std::sort(out.generators.begin(), out.generators.end());
  out.generators.erase(std::unique(out.generators.begin(), out.generators.end()),
                       out.generators.end());
  return out;
}

/// Exact membership test; strict = topological interior in the ambient space.
inline bool cone_contains(const Cone& c, const RatVector& p, bool strict) {
  if (static_cast<int>(p.size()) != c.ambient_dim)
    throw DegenerateInputError("cone_contains: dimension mismatch");
  Cone dual = dual_cone(c);
  for (const IntVector& y : dual.generators) {
    Rat s = dot(p, y);
    if (strict ? s <= 0 : s < 0) return false;
  }
  return true;
}

}  // namespace toricmdp
