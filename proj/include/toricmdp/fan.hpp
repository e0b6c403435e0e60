#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "toricmdp/cone.hpp"
#include "toricmdp/hull.hpp"
#include "toricmdp/linalg.hpp"

namespace toricmdp {

/// Complete simplicial fan: primitive ray generators plus maximal cones as
/// ray index sets of size dim. Regularity and completeness are checked by
/// validate(), not assumed at construction.
class Fan {
 public:
  Fan(int dim, std::vector<IntVector> rays, std::vector<std::vector<int>> max_cones)
      : dim_(dim), rays_(std::move(rays)), max_cones_(std::move(max_cones)) {
    if (dim_ < 1) throw DegenerateInputError("fan: dimension must be >= 1");
    if (rays_.empty()) throw DegenerateInputError("fan: no rays");
    if (static_cast<int>(rays_.size()) > 62)
      throw DegenerateInputError("fan: more than 62 rays unsupported");
    for (const IntVector& r : rays_) {
      if (static_cast<int>(r.size()) != dim_)
        throw DegenerateInputError("fan: ray dimension mismatch");
      if (r.is_zero()) throw DegenerateInputError("fan: zero ray");
    }
    for (std::size_t i = 0; i < rays_.size(); ++i)
      for (std::size_t j = i + 1; j < rays_.size(); ++j)
        if (rays_[i] == rays_[j]) throw DegenerateInputError("fan: duplicate rays");
    if (max_cones_.empty()) throw DegenerateInputError("fan: no maximal cones");
    for (auto& cone : max_cones_) {
      if (static_cast<int>(cone.size()) != dim_)
        throw DegenerateInputError("fan: maximal cone must have dim rays");
      std::sort(cone.begin(), cone.end());
      for (std::size_t k = 0; k < cone.size(); ++k) {
        if (cone[k] < 0 || cone[k] >= static_cast<int>(rays_.size()))
          throw DegenerateInputError("fan: cone ray index out of range");
        if (k > 0 && cone[k] == cone[k - 1])
          throw DegenerateInputError("fan: repeated ray in cone");
      }
      if (cone_determinant(cone) == 0)
        throw DegenerateInputError("fan: maximal cone rays are linearly dependent");
    }
    std::sort(max_cones_.begin(), max_cones_.end());
    max_cones_.erase(std::unique(max_cones_.begin(), max_cones_.end()), max_cones_.end());
  }

  int dim() const { return dim_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const std::vector<std::vector<int>>& max_cones() const { return max_cones_; }
  int ray_count() const { return static_cast<int>(rays_.size()); }

  Int cone_determinant(const std::vector<int>& cone) const {
    IntMatrix m(cone.size(), static_cast<std::size_t>(dim_));
    for (std::size_t i = 0; i < cone.size(); ++i)
      for (std::size_t j = 0; j < static_cast<std::size_t>(dim_); ++j)
        m(i, j) = rays_[static_cast<std::size_t>(cone[i])][j];
    return determinant(m);
  }

 private:
  int dim_;
  std::vector<IntVector> rays_;
  std::vector<std::vector<int>> max_cones_;
};

struct ValidationReport {
  bool regular = false;
  bool complete = false;
  // witnesses on failure
  std::optional<int> irregular_cone;      // index into max_cones
  std::optional<int> non_primitive_ray;   // ray index
  std::string completeness_failure;       // empty when complete
  bool ok() const { return regular && complete; }
};

/// Regularity: every maximal cone has determinant +-1 (and every ray is
/// primitive). Completeness: every (dim-1)-face of a maximal cone is shared
/// by exactly two maximal cones, the face-adjacency graph is connected, and
/// every ray is used.
inline ValidationReport validate(const Fan& fan) {
  ValidationReport rep;
  rep.regular = true;
  for (int i = 0; i < fan.ray_count(); ++i)
    if (!fan.rays()[static_cast<std::size_t>(i)].is_primitive()) {
      rep.regular = false;
      rep.non_primitive_ray = i;
      break;
    }
  for (std::size_t k = 0; rep.regular && k < fan.max_cones().size(); ++k) {
    Int d = fan.cone_determinant(fan.max_cones()[k]);
    if (d != 1 && d != -1) {
      rep.regular = false;
      rep.irregular_cone = static_cast<int>(k);
    }
  }

  rep.complete = true;
  std::vector<bool> used(static_cast<std::size_t>(fan.ray_count()), false);
  for (const auto& cone : fan.max_cones())
    for (int r : cone) used[static_cast<std::size_t>(r)] = true;
  for (int r = 0; r < fan.ray_count(); ++r)
    if (!used[static_cast<std::size_t>(r)]) {
      rep.complete = false;
      rep.completeness_failure = "ray " + std::to_string(r) + " not in any maximal cone";
      return rep;
    }
  std::map<std::vector<int>, std::vector<int>> facet_cones;
  for (std::size_t k = 0; k < fan.max_cones().size(); ++k) {
    const auto& cone = fan.max_cones()[k];
    for (std::size_t drop = 0; drop < cone.size(); ++drop) {
      std::vector<int> facet;
      for (std::size_t i = 0; i < cone.size(); ++i)
        if (i != drop) facet.push_back(cone[i]);
      facet_cones[facet].push_back(static_cast<int>(k));
    }
  }
  for (const auto& [facet, cones] : facet_cones)
    if (cones.size() != 2) {
      rep.complete = false;
      rep.completeness_failure = "a facet lies in " + std::to_string(cones.size()) +
                                 " maximal cones instead of 2";
      return rep;
    }
  // connectivity of the facet-adjacency graph
  std::vector<int> component(fan.max_cones().size(), -1);
  std::vector<int> stack{0};
  component[0] = 0;
  std::map<int, std::vector<int>> adj;
  for (const auto& [facet, cones] : facet_cones) {
    adj[cones[0]].push_back(cones[1]);
    adj[cones[1]].push_back(cones[0]);
  }
  while (!stack.empty()) {
    int k = stack.back();
    stack.pop_back();
    for (int nb : adj[k])
      if (component[static_cast<std::size_t>(nb)] < 0) {
        component[static_cast<std::size_t>(nb)] = 0;
        stack.push_back(nb);
      }
  }
  for (int c : component)
    if (c < 0) {
      rep.complete = false;
      rep.completeness_failure = "facet-adjacency graph is disconnected";
      return rep;
    }
  return rep;
}

/// The configuration A = {mu0} u {1 x mu : mu in Sigma(1)} in Z x N,
/// together with a canonical Z-basis of its relation lattice L.
struct PointConfig {
  int n = 0;                            // dim of N
  std::vector<IntVector> points;        // indices 0..p, points[0] = 1 x 0
  std::vector<IntVector> relation_basis;  // Z-basis of L, each of length p+1

  int p() const { return static_cast<int>(points.size()) - 1; }

  IntMatrix matrix() const { return IntMatrix::from_columns(points); }

  /// Projection of point i to N (drops the leading 1).
  IntVector projected(int i) const {
    IntVector v(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
      v[static_cast<std::size_t>(j)] = points[static_cast<std::size_t>(i)][static_cast<std::size_t>(j) + 1];
    return v;
  }
};

inline PointConfig point_config(const Fan& fan) {
  PointConfig cfg;
  cfg.n = fan.dim();
  IntVector mu0(static_cast<std::size_t>(fan.dim()) + 1);
  mu0[0] = 1;
  cfg.points.push_back(mu0);
  for (const IntVector& r : fan.rays()) {
    IntVector pt(static_cast<std::size_t>(fan.dim()) + 1);
    pt[0] = 1;
    for (int j = 0; j < fan.dim(); ++j)
      pt[static_cast<std::size_t>(j) + 1] = r[static_cast<std::size_t>(j)];
    cfg.points.push_back(pt);
  }
  cfg.relation_basis = integer_kernel_basis(cfg.matrix());
  // sign convention: leading entry negative, matching l_0 <= 0 for the
  // relations the series modules enumerate
  for (IntVector& b : cfg.relation_basis) b = -b;
  return cfg;
}

/// Minimal set of rays not spanning a cone of the fan.
struct PrimitiveCollection {
  std::vector<int> ray_indices;  // sorted

  friend bool operator==(const PrimitiveCollection& a, const PrimitiveCollection& b) {
    return a.ray_indices == b.ray_indices;
  }
  friend bool operator<(const PrimitiveCollection& a, const PrimitiveCollection& b) {
    return a.ray_indices.size() != b.ray_indices.size()
               ? a.ray_indices.size() < b.ray_indices.size()
               : a.ray_indices < b.ray_indices;
  }
};

/// Inclusion-minimal non-faces of {sigma(1) : sigma in Sigma}, sorted by
/// size then lexicographically.
inline std::vector<PrimitiveCollection> primitive_collections(const Fan& fan) {
  int p = fan.ray_count();
  std::set<std::uint64_t> faces;
  faces.insert(0);
  for (const auto& cone : fan.max_cones()) {
    std::uint64_t full = 0;
    for (int r : cone) full |= std::uint64_t{1} << r;
    // all subsets of the cone
    for (std::uint64_t sub = full;; sub = (sub - 1) & full) {
      faces.insert(sub);
      if (sub == 0) break;
    }
  }
  std::vector<std::vector<std::uint64_t>> by_size(static_cast<std::size_t>(fan.dim()) + 1);
  for (std::uint64_t f : faces) {
    int sz = 0;
    for (std::uint64_t b = f; b; b &= b - 1) ++sz;
    by_size[static_cast<std::size_t>(sz)].push_back(f);
  }
  std::vector<PrimitiveCollection> result;
  for (int k = 2; k <= fan.dim() + 1; ++k) {
    std::set<std::uint64_t> candidates;
    for (std::uint64_t f : by_size[static_cast<std::size_t>(k - 1)])
      for (int j = 0; j < p; ++j)
        if (!(f & (std::uint64_t{1} << j))) candidates.insert(f | (std::uint64_t{1} << j));
    for (std::uint64_t s : candidates) {
      if (faces.count(s)) continue;
      bool all_subsets_faces = true;
      for (std::uint64_t b = s; b && all_subsets_faces; b &= b - 1) {
        std::uint64_t lowest = b & (~b + 1);
        if (!faces.count(s & ~lowest)) all_subsets_faces = false;
      }
      if (!all_subsets_faces) continue;
      PrimitiveCollection col;
      for (int j = 0; j < p; ++j)
        if (s & (std::uint64_t{1} << j)) col.ray_indices.push_back(j);
      result.push_back(std::move(col));
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

/// A primitive collection P with its relation sum_{mu in P} mubar =
/// c0 mubar_0 + sum_{mu in G} c_mu mubar and relation vector l in L.
struct PrimitiveRelation {
  PrimitiveCollection collection;
  std::vector<int> generator_indices;  // G, ray indices, sorted
  Int c0;                              // |P| - sum c_mu (any sign)
  std::map<int, Int> c;                // ray index -> positive coefficient
  IntVector l;                         // length p+1, indexed over A
};

/// Locates s = sum of the collection's rays in the unique minimal cone and
/// assembles the relation. Throws IntegralityError when the fan data is
/// inconsistent with regularity.
inline PrimitiveRelation primitive_relation(const Fan& fan, const PrimitiveCollection& pc) {
  IntVector s(static_cast<std::size_t>(fan.dim()));
  for (int r : pc.ray_indices) s = s + fan.rays()[static_cast<std::size_t>(r)];
  for (const auto& cone : fan.max_cones()) {
    std::vector<IntVector> basis;
    for (int r : cone) basis.push_back(fan.rays()[static_cast<std::size_t>(r)]);
    auto coeffs = express_in_basis(basis, s);
    if (!coeffs) continue;
    bool nonneg = true;
    for (std::size_t i = 0; i < coeffs->size(); ++i)
      if ((*coeffs)[i] < 0) nonneg = false;
    if (!nonneg) continue;
    PrimitiveRelation rel;
    rel.collection = pc;
    Int csum = 0;
    for (std::size_t i = 0; i < cone.size(); ++i) {
      const Rat& ci = (*coeffs)[i];
      if (ci == 0) continue;
      if (denominator(ci) != 1)
        throw IntegralityError("primitive_relation: fractional cone coefficient");
      rel.generator_indices.push_back(cone[i]);
      rel.c[cone[i]] = numerator(ci);
      csum += numerator(ci);
    }
    rel.c0 = Int(static_cast<long>(pc.ray_indices.size())) - csum;
    for (int r : pc.ray_indices)
      if (rel.c.count(r))
        throw IntegralityError("primitive_relation: collection meets its generator set");
    IntVector l(static_cast<std::size_t>(fan.ray_count()) + 1);
    l[0] = -rel.c0;
    for (int r : pc.ray_indices) l[static_cast<std::size_t>(r) + 1] += 1;
    for (const auto& [r, cr] : rel.c) l[static_cast<std::size_t>(r) + 1] -= cr;
    rel.l = std::move(l);
    return rel;
  }
  throw IntegralityError("primitive_relation: sum of collection lies in no maximal cone");
}

inline std::vector<PrimitiveRelation> primitive_relations(const Fan& fan) {
  std::vector<PrimitiveRelation> rels;
  for (const PrimitiveCollection& pc : primitive_collections(fan))
    rels.push_back(primitive_relation(fan, pc));
  return rels;
}

struct StarReport {
  bool nef_criterion = false;       // (ii): every primitive relation has l_0 <= 0
  bool boundary_criterion = false;  // (iii): every ray on the hull boundary
  std::optional<PrimitiveCollection> nef_witness;  // relation with l_0 > 0
  std::optional<int> interior_ray;                 // ray off the hull boundary
  bool holds() const { return nef_criterion && boundary_criterion; }
};

/// Evaluates criteria (ii) and (iii) of the c1-nefness equivalence
/// independently; they must agree on every complete regular fan.
inline StarReport property_star(const Fan& fan) {
  StarReport rep;
  rep.nef_criterion = true;
  for (const PrimitiveRelation& rel : primitive_relations(fan))
    if (rel.l[0] > 0) {
      rep.nef_criterion = false;
      if (!rep.nef_witness) rep.nef_witness = rel.collection;
    }
  rep.boundary_criterion = true;
  for (int r = 0; r < fan.ray_count(); ++r)
    if (!hull_boundary_contains(fan.rays(), fan.rays()[static_cast<std::size_t>(r)])) {
      rep.boundary_criterion = false;
      if (!rep.interior_ray) rep.interior_ray = r;
    }
  if (rep.nef_criterion != rep.boundary_criterion)
    throw InternalConsistencyError("property_star: criteria (ii) and (iii) disagree");
  return rep;
}

/// The closed Kahler cone in the coordinates dual to the relation basis.
struct KahlerCone {
  Cone cone;                              // in L* coordinates
  bool is_large = false;                  // dimension = p - n
  std::vector<IntVector> relation_coords;  // each l(P) expressed in the relation basis
};

inline KahlerCone kahler_cone(const PointConfig& cfg,
                              const std::vector<PrimitiveRelation>& rels) {
  int rank_l = cfg.p() - cfg.n;
  KahlerCone kc;
  for (const PrimitiveRelation& rel : rels) {
    auto coords = express_in_lattice_basis(cfg.relation_basis, rel.l);
    if (!coords) throw IntegralityError("kahler_cone: relation off the lattice");
    kc.relation_coords.push_back(*coords);
  }
  Cone dualside;
  dualside.ambient_dim = rank_l;
  for (const IntVector& a : kc.relation_coords) dualside.generators.push_back(a.primitive_part());
  std::sort(dualside.generators.begin(), dualside.generators.end());
  dualside.generators.erase(std::unique(dualside.generators.begin(), dualside.generators.end()),
                            dualside.generators.end());
  kc.cone = dual_cone(dualside);
  kc.is_large =
      !kc.cone.generators.empty() &&
      static_cast<int>(rank(IntMatrix::from_rows(kc.cone.generators))) == rank_l;
  if (rank_l == 0) kc.is_large = true;  // degenerate: L = 0
  return kc;
}

inline KahlerCone kahler_cone(const Fan& fan) {
  PointConfig cfg = point_config(fan);
  return kahler_cone(cfg, primitive_relations(fan));
}

/// Triangulation of conv(A) as simplices of A-indices.
struct Triangulation {
  std::vector<std::vector<int>> simplices;  // each sorted, size n+1
};

/// T0: each maximal cone coned with mubar_0 (A-index 0).
inline Triangulation maximal_triangulation(const Fan& fan) {
  Triangulation t;
  for (const auto& cone : fan.max_cones()) {
    std::vector<int> simplex{0};
    for (int r : cone) simplex.push_back(r + 1);
    t.simplices.push_back(std::move(simplex));
  }
  std::sort(t.simplices.begin(), t.simplices.end());
  return t;
}

/// omega in C'(T0): pairing >= 0 against every primitive relation
/// (strict: > 0, the interior).
inline bool in_secondary_cone(const Fan& fan, const RatVector& omega, bool strict) {
  if (static_cast<int>(omega.size()) != fan.ray_count() + 1)
    throw DegenerateInputError("in_secondary_cone: omega must have length p+1");
  for (const PrimitiveRelation& rel : primitive_relations(fan)) {
    Rat pairing = dot(omega, rel.l);
    if (strict ? pairing <= 0 : pairing < 0) return false;
  }
  return true;
}

/// The lower-hull subdivision of A at a strictly interior omega must equal
/// T0; non-simplicial cells are reported as an error.
inline bool cross_check_T0(const Fan& fan, const RatVector& omega) {
  if (!in_secondary_cone(fan, omega, true))
    throw DegenerateInputError("cross_check_T0: omega is not strictly interior");
  PointConfig cfg = point_config(fan);
  std::vector<IntVector> projected;
  for (int i = 0; i <= cfg.p(); ++i) projected.push_back(cfg.projected(i));
  std::vector<SubdivisionCell> cells = lower_hull_subdivision(projected, omega);
  for (const SubdivisionCell& cell : cells)
    if (static_cast<int>(cell.vertex_indices.size()) != fan.dim() + 1)
      throw DegenerateInputError("cross_check_T0: non-simplicial cell in the lower hull");
  std::set<std::vector<int>> got;
  for (const SubdivisionCell& cell : cells) got.insert(cell.vertex_indices);
  std::set<std::vector<int>> want;
  for (const auto& s : maximal_triangulation(fan).simplices) want.insert(s);
  return got == want;
}

/// A strictly interior point of C'(T0), built from squared-norm heights over
/// a growing constant and verified exactly. Requires property (*).
inline RatVector interior_omega(const Fan& fan) {
  std::size_t p1 = static_cast<std::size_t>(fan.ray_count()) + 1;
  Int a = 1;
  for (int iter = 0; iter < 64; ++iter, a *= 2) {
    RatVector omega(p1);
    for (std::size_t i = 1; i < p1; ++i) {
      const IntVector& mu = fan.rays()[i - 1];
      omega[i] = Rat(a + dot(mu, mu));
    }
    if (in_secondary_cone(fan, omega, true)) return omega;
  }
  throw DegenerateInputError("interior_omega: no interior weight found (property (*) violated?)");
}

}  // namespace toricmdp
