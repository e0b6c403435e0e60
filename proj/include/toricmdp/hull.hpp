#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "toricmdp/linalg.hpp"

namespace toricmdp {

/// One cell of a polyhedral subdivision, as indices into a point configuration.
struct SubdivisionCell {
  std::vector<int> vertex_indices;  // sorted, distinct

  friend bool operator==(const SubdivisionCell& a, const SubdivisionCell& b) {
    return a.vertex_indices == b.vertex_indices;
  }
  friend bool operator<(const SubdivisionCell& a, const SubdivisionCell& b) {
    return a.vertex_indices < b.vertex_indices;
  }
};

namespace detail {

/// Iterate over all k-subsets of {0..n-1}.
template <typename F>
void for_each_subset(int n, int k, F&& f) {
  if (k > n || k < 0) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

/// Primitive integer kernel vector of a d x (d+1) rational-rank-d matrix,
/// used to recover hyperplane coefficients; nullopt when rank deficient.
inline std::optional<IntVector> hyperplane_through(const std::vector<IntVector>& pts,
                                                   const std::vector<int>& subset) {
  // rows (p_i, 1); kernel vector (c, -c0) gives <c, x> = c0 on the subset
  std::size_t d = pts[0].size();
  IntMatrix m(subset.size(), d + 1);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) m(i, j) = pts[static_cast<std::size_t>(subset[i])][j];
    m(i, d) = 1;
  }
  std::vector<IntVector> ker = integer_kernel_basis(m);
  if (ker.size() != 1) return std::nullopt;  // points affinely dependent
  return ker[0].primitive_part();
}

/// Rank of the affine span of a point set.
inline std::size_t affine_rank(const std::vector<IntVector>& pts) {
  if (pts.size() <= 1) return 0;
  std::vector<IntVector> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  return rank(IntMatrix::from_rows(diffs));
}

/// Coordinates of the points in an affine basis of their span; also maps q.
/// Returns nullopt when q is off the affine span.
inline std::optional<std::pair<std::vector<IntVector>, IntVector>> affine_coordinates(
    const std::vector<IntVector>& pts, const IntVector& q) {
  std::vector<IntVector> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  IntMatrix all = IntMatrix::from_rows(diffs);
  auto [h, u] = hermite_normal_form(all);
  std::vector<IntVector> basis;
  for (std::size_t i = 0; i < h.rows(); ++i)
    if (!h.row(i).is_zero()) basis.push_back(h.row(i));
  IntMatrix bcols = IntMatrix::from_columns(basis);
  // clear denominators of every coordinate vector simultaneously
  Int denom = 1;
  std::vector<RatVector> coords;
  coords.reserve(pts.size() + 1);
  for (std::size_t i = 0; i < pts.size() + 1; ++i) {
    const IntVector& x = i < pts.size() ? pts[i] : q;
    auto sol = solve_rational(bcols, RatVector(x - pts[0]));
    if (!sol) return std::nullopt;  // only possible for q
    for (std::size_t j = 0; j < sol->size(); ++j) {
      Int den = denominator((*sol)[j]);
      denom = denom / int_gcd(denom, den) * den;
    }
    coords.push_back(std::move(*sol));
  }
  std::vector<IntVector> out;
  for (const RatVector& c : coords) {
    IntVector v(c.size());
    for (std::size_t j = 0; j < c.size(); ++j)
      v[j] = numerator(c[j]) * (denom / denominator(c[j]));
    out.push_back(std::move(v));
  }
  IntVector qc = out.back();
  out.pop_back();
  return std::make_pair(std::move(out), std::move(qc));
}

/// Boundary test for a full-dimensional hull: q is on the boundary iff it
/// satisfies every supporting-hyperplane inequality and meets one of them.
inline bool boundary_full_dim(const std::vector<IntVector>& pts, const IntVector& q) {
  int n = static_cast<int>(pts[0].size());
  int p = static_cast<int>(pts.size());
  bool any_tight = false;
  bool inside_all = true;
  for_each_subset(p, n, [&](const std::vector<int>& subset) {
    if (!inside_all) return;
    auto hyp = hyperplane_through(pts, subset);
    if (!hyp) return;
    const IntVector& h = *hyp;  // (c, -c0): point x supports <c,x> - c0
    auto eval = [&](const IntVector& x) {
      Int s = h[pts[0].size()];
      for (std::size_t j = 0; j < pts[0].size(); ++j) s += h[j] * x[j];
      return s;
    };
    bool all_ge = true, all_le = true;
    for (const IntVector& x : pts) {
      Int s = eval(x);
      if (s > 0) all_le = false;
      if (s < 0) all_ge = false;
    }
    if (!all_ge && !all_le) return;  // not supporting
    Int sq = eval(q);
    Int side = all_ge ? sq : -sq;  // inward-oriented value at q
    if (side < 0) inside_all = false;
    if (sq == 0) any_tight = true;
  });
  return inside_all && any_tight;
}

}  // namespace detail

/// True iff q lies on the boundary of conv(points), decided exactly via
/// enumeration of supporting hyperplanes.
inline bool hull_boundary_contains(const std::vector<IntVector>& points, const IntVector& q) {
  if (points.empty()) throw DegenerateInputError("hull_boundary_contains: no points");
  std::size_t n = points[0].size();
  for (const IntVector& x : points)
    if (x.size() != n) throw DegenerateInputError("hull_boundary_contains: mixed dimensions");
  if (q.size() != n) throw DegenerateInputError("hull_boundary_contains: dimension mismatch");
  std::size_t r = detail::affine_rank(points);
  if (r == n) return detail::boundary_full_dim(points, q);
  // hull has empty interior: boundary = conv(points); test membership inside
  // the affine span
  auto coords = detail::affine_coordinates(points, q);
  if (!coords) return false;  // q off the affine span
  std::vector<IntVector>& pc = coords->first;
  IntVector& qc = coords->second;
  if (r == 0) return qc.is_zero();  // single point
  // inside the span, conv is full-dimensional; q in conv iff it satisfies
  // all facet inequalities
  int d = static_cast<int>(r);
  bool inside = true;
  detail::for_each_subset(static_cast<int>(pc.size()), d, [&](const std::vector<int>& subset) {
    if (!inside) return;
    auto hyp = detail::hyperplane_through(pc, subset);
    if (!hyp) return;
    const IntVector& h = *hyp;
    auto eval = [&](const IntVector& x) {
      Int s = h[static_cast<std::size_t>(d)];
      for (std::size_t j = 0; j < static_cast<std::size_t>(d); ++j) s += h[j] * x[j];
      return s;
    };
    bool all_ge = true, all_le = true;
    for (const IntVector& x : pc) {
      Int s = eval(x);
      if (s > 0) all_le = false;
      if (s < 0) all_ge = false;
    }
    if (!all_ge && !all_le) return;
    Int sq = eval(qc);
    if ((all_ge && sq < 0) || (all_le && sq > 0)) inside = false;
  });
  return inside;
}

/// Cells of the regular subdivision induced by lifting points to the given
/// heights and projecting the lower hull. Non-generic heights yield
/// non-simplicial cells.
inline std::vector<SubdivisionCell> lower_hull_subdivision(const std::vector<IntVector>& points,
                                                           const RatVector& heights) {
  if (points.size() != heights.size())
    throw DegenerateInputError("lower_hull_subdivision: |points| != |heights|");
  if (points.empty()) throw DegenerateInputError("lower_hull_subdivision: no points");
  std::size_t n = points[0].size();
  if (detail::affine_rank(points) != n)
    throw DegenerateInputError("lower_hull_subdivision: points do not affinely span the space");
  int p = static_cast<int>(points.size());

  // A candidate lower facet is the graph of an affine function determined by
  // n+1 points whose projections are affinely independent.
  std::set<SubdivisionCell> cells;
  detail::for_each_subset(p, static_cast<int>(n) + 1, [&](const std::vector<int>& subset) {
    IntMatrix m(n + 1, n + 1);
    RatVector rhs(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      const IntVector& pt = points[static_cast<std::size_t>(subset[i])];
      for (std::size_t j = 0; j < n; ++j) m(i, j) = pt[j];
      m(i, n) = 1;
      rhs[i] = heights[static_cast<std::size_t>(subset[i])];
    }
    if (determinant(m) == 0) return;  // projections affinely dependent
    auto sol = solve_rational(m, rhs);  // h = <c, x> + c0
    const RatVector& c = *sol;
    auto excess = [&](int i) {
      Rat s = heights[static_cast<std::size_t>(i)] - c[n];
      for (std::size_t j = 0; j < n; ++j)
        s -= c[j] * Rat(points[static_cast<std::size_t>(i)][j]);
      return s;  // lifted point height above the affine graph
    };
    SubdivisionCell cell;
    for (int i = 0; i < p; ++i) {
      Rat e = excess(i);
      if (e < 0) return;  // some lifted point below: not a lower face
      if (e == 0) cell.vertex_indices.push_back(i);
    }
    cells.insert(std::move(cell));
  });
  return std::vector<SubdivisionCell>(cells.begin(), cells.end());
}

}  // namespace toricmdp
