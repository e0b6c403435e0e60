#pragma once

#include <optional>
#include <vector>

#include "toricmdp/fan.hpp"
#include "toricmdp/groebner.hpp"

namespace toricmdp {

/// I_l(gamma) as the falling-factorial product over the positive part of l:
/// prod_mu gamma_mu (gamma_mu - 1) ... (gamma_mu - l+_mu + 1).
inline Rat indicial_value(const IntVector& l, const RatVector& gamma) {
  if (l.size() != gamma.size()) throw DegenerateInputError("indicial_value: length mismatch");
  Rat prod = 1;
  for (std::size_t i = 0; i < l.size(); ++i)
    if (l[i] > 0) prod *= falling_factorial(gamma[i], static_cast<long>(l[i]));
  return prod;
}

/// The canonical exponent lift gamma = (-1, 0, ..., 0).
inline RatVector canonical_gamma(int p) {
  RatVector g(static_cast<std::size_t>(p) + 1);
  g[0] = -1;
  return g;
}

struct IndexReport {
  bool cones_independent = false;    // Stanley-Reisner variety meets the linear
                                     // relations only at 0
  bool gamma0_forced = false;        // sum gamma_i + 1 = 0 pins gamma_0 = -1
  bool relations_vanish = false;     // I_{l(P)}(-1,0,..,0) = 0 for every P
  bool dual_generators_positive = false;  // every Kahler-dual generator has a
                                          // positive entry at some index > 0
  std::optional<PrimitiveCollection> vanishing_witness;  // relation with I != 0
  std::optional<IntVector> positivity_witness;           // dual generator violating (d)
  bool passed() const {
    return cones_independent && gamma0_forced && relations_vanish && dual_generators_positive;
  }
};

/// Certificate that gamma = (-1, 0, ..., 0) is the only admissible series
/// exponent: cone independence, the Euler constraint, vanishing of the
/// indicial polynomials of all primitive relations, and positivity of the
/// Kahler-dual generators away from index 0.
inline IndexReport unique_index_certificate(const Fan& fan) {
  StarReport star = property_star(fan);
  if (!star.holds())
    throw DegenerateInputError("unique_index_certificate: fan lacks property (*)");
  PointConfig cfg = point_config(fan);
  std::vector<PrimitiveRelation> rels = primitive_relations(fan);
  KahlerCone kc = kahler_cone(cfg, rels);
  if (!kc.is_large)
    throw DegenerateInputError("unique_index_certificate: Kahler cone is not large");

  IndexReport rep;
  rep.cones_independent = true;
  for (const auto& cone : fan.max_cones())
    if (fan.cone_determinant(cone) == 0) rep.cones_independent = false;

  rep.gamma0_forced = true;
  for (const IntVector& pt : cfg.points)
    if (pt[0] != 1) rep.gamma0_forced = false;  // Euler row sum gamma_i = -1 needs all-ones row

  RatVector gamma = canonical_gamma(cfg.p());
  rep.relations_vanish = true;
  for (const PrimitiveRelation& rel : rels)
    if (indicial_value(rel.l, gamma) != 0) {
      rep.relations_vanish = false;
      if (!rep.vanishing_witness) rep.vanishing_witness = rel.collection;
    }

  // generators of the Kahler-dual cone(l(P)), recovered as the dual of the
  // Kahler cone and mapped back to relation vectors
  rep.dual_generators_positive = true;
  Cone kdual = dual_cone(kc.cone);
  for (const IntVector& gen : kdual.generators) {
    IntVector l(static_cast<std::size_t>(cfg.p()) + 1);
    for (std::size_t k = 0; k < gen.size(); ++k) l = l + gen[k] * cfg.relation_basis[k];
    bool positive_off_zero = false;
    for (std::size_t i = 1; i < l.size(); ++i)
      if (l[i] > 0) positive_off_zero = true;
    if (!positive_off_zero) {
      rep.dual_generators_positive = false;
      if (!rep.positivity_witness) rep.positivity_witness = l;
    }
  }
  return rep;
}

/// Rank of the total cohomology of the smooth complete toric variety:
/// the number of maximal cones.
inline int chow_ring_dimension(const Fan& fan) {
  return static_cast<int>(fan.max_cones().size());
}

}  // namespace toricmdp
