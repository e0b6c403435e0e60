#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toricmdp/fan.hpp"
#include "toricmdp/indicial.hpp"
#include "toricmdp/series.hpp"

namespace toricmdp {

/// Z-basis of tau-dual cap L for a regular large cone tau given by
/// generators in L* coordinates: the columns of the inverse generator
/// matrix, mapped back to relation vectors.
inline std::vector<IntVector> tau_dual_basis(const PointConfig& cfg,
                                             const std::vector<IntVector>& tau_generators) {
  std::size_t r = tau_generators.size();
  IntMatrix g = IntMatrix::from_rows(tau_generators);
  Int det = determinant(g);
  if (det != 1 && det != -1)
    throw InvalidTauError("tau_dual_basis: generators are not a lattice basis");
  // integer inverse via HNF: U*G = I when G is unimodular
  auto [h, u] = hermite_normal_form(g);
  if (!(h == IntMatrix::identity(r)))
    throw InvalidTauError("tau_dual_basis: generators are not a lattice basis");
  std::vector<IntVector> basis;
  for (std::size_t k = 0; k < r; ++k) {
    IntVector l(cfg.points.size());
    for (std::size_t mrow = 0; mrow < r; ++mrow) l = l + u(mrow, k) * cfg.relation_basis[mrow];
    basis.push_back(std::move(l));
  }
  return basis;
}

struct MdpReport {
  bool star_ok = false;
  bool kahler_large = false;
  bool tau_valid = false;
  bool index_ok = false;
  bool annihilation_ok = false;
  StarReport star;
  IndexReport index;
  AnnihilationReport annihilation;
  std::vector<IntVector> tau_dual;  // the basis l^(1..p-n) backing the local series
  bool certified() const {
    return star_ok && kahler_large && tau_valid && index_ok && annihilation_ok;
  }
};

/// Full maximal-degeneracy certificate at the fixed point of tau:
/// (1) property (*) and a large Kahler cone, (2) tau regular, large and
/// contained in the closed Kahler cone, (3) the unique-index certificate,
/// (4) the local series exists and is annihilated by every box_{l(P)} up to
/// order N. Invalid tau input throws InvalidTauError.
inline MdpReport verify_max_degeneracy(const Fan& fan,
                                       const std::vector<IntVector>& tau_generators, long order) {
  ValidationReport val = validate(fan);
  if (!val.ok()) throw DegenerateInputError("verify_max_degeneracy: fan is not complete regular");
  PointConfig cfg = point_config(fan);
  std::vector<PrimitiveRelation> rels = primitive_relations(fan);

  MdpReport rep;
  rep.star = property_star(fan);
  rep.star_ok = rep.star.holds();
  KahlerCone kc = kahler_cone(cfg, rels);
  rep.kahler_large = kc.is_large;
  if (!rep.star_ok || !rep.kahler_large) return rep;  // theorem hypotheses fail

  int rank_l = cfg.p() - cfg.n;
  if (static_cast<int>(tau_generators.size()) != rank_l)
    throw InvalidTauError("verify_max_degeneracy: tau needs p - n generators (not large)");
  for (const IntVector& g : tau_generators) {
    if (static_cast<int>(g.size()) != rank_l)
      throw InvalidTauError("verify_max_degeneracy: tau generator has wrong dimension");
    for (const IntVector& alpha : kc.relation_coords)
      if (dot(g, alpha) < 0)
        throw InvalidTauError("verify_max_degeneracy: tau is not contained in the Kahler cone");
  }
  if (!is_unimodular_extension(tau_generators))
    throw InvalidTauError("verify_max_degeneracy: tau is not regular");
  rep.tau_valid = true;

  rep.index = unique_index_certificate(fan);
  rep.index_ok = rep.index.passed();

  rep.tau_dual = tau_dual_basis(cfg, tau_generators);
  FormalSeries series = local_series(fan, rep.tau_dual, order);
  GkzSystem sys = make_gkz_system(cfg);
  std::vector<IntVector> ops;
  for (const PrimitiveRelation& rel : rels) ops.push_back(rel.l);
  rep.annihilation = verify_annihilation(sys, series, ops);
  rep.annihilation_ok = rep.annihilation.passed;
  return rep;
}

/// Default tau: the closed Kahler cone itself, when regular.
inline std::vector<IntVector> default_tau(const KahlerCone& kc) {
  if (!kc.is_large) throw InvalidTauError("default_tau: Kahler cone is not large");
  if (!is_unimodular_extension(kc.cone.generators))
    throw InvalidTauError("default_tau: Kahler cone is not regular; pass tau explicitly");
  return kc.cone.generators;
}

}  // namespace toricmdp
