#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toricmdp/fan.hpp"
#include "toricmdp/indicial.hpp"
#include "toricmdp/linalg.hpp"

namespace toricmdp {

/// Which coefficients of a truncated series are known. Offsets are relation
/// vectors v in L relative to the series exponent gamma.
///   Inside     — computed (possibly zero);
///   KnownZero  — outside the support of the represented solution;
///   Outside    — beyond the truncation, unknown.
struct TruncationSpec {
  enum class Mode {
    BasisMonoid,  // support in {sum m_k basis_k : m >= 0}, degree = sum m_k
    NonnegTail,   // support in {v : v_i >= 0 for i >= 1}, degree = sum_{i>=1} v_i
  };
  enum class Region { Inside, KnownZero, Outside };

  Mode mode = Mode::NonnegTail;
  std::vector<IntVector> basis;  // BasisMonoid only: Z-basis of tau-dual cap L
  long max_total_degree = 0;     // N

  Region classify(const IntVector& v) const {
    if (mode == Mode::NonnegTail) {
      Int deg = 0;
      for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] < 0) return Region::KnownZero;
        deg += v[i];
      }
      return deg <= max_total_degree ? Region::Inside : Region::Outside;
    }
    auto m = express_in_lattice_basis(basis, v);
    if (!m) return Region::KnownZero;
    Int deg = 0;
    for (std::size_t k = 0; k < m->size(); ++k) {
      if ((*m)[k] < 0) return Region::KnownZero;
      deg += (*m)[k];
    }
    return deg <= max_total_degree ? Region::Inside : Region::Outside;
  }
};

/// Truncated formal solution sum_{v} c_v a^{gamma + v} with exact rational
/// coefficients; zero coefficients are never stored.
struct FormalSeries {
  RatVector gamma;
  std::map<IntVector, Rat> terms;
  TruncationSpec truncation;

  Rat coefficient(const IntVector& v) const {
    auto it = terms.find(v);
    return it == terms.end() ? Rat(0) : it->second;
  }
};

/// GKZ data for a configuration: box generators spanning L and the order-1
/// Euler operators, with the exponent fixed to beta = -1 x 0.
struct GkzSystem {
  PointConfig config;
  IntVector beta;               // length n+1, (-1, 0, ..., 0)
  std::vector<IntVector> box_generators;  // relation basis of L
  IntMatrix euler_matrix;       // rows <u, mubar_i> for the standard basis of Mbar
};

inline GkzSystem make_gkz_system(const PointConfig& cfg) {
  GkzSystem sys;
  sys.config = cfg;
  sys.beta = IntVector(static_cast<std::size_t>(cfg.n) + 1);
  sys.beta[0] = -1;
  sys.box_generators = cfg.relation_basis;
  sys.euler_matrix = cfg.matrix();
  return sys;
}

namespace detail {

/// Both branches of box_l applied to the series, keeping exact zeros so that
/// verified cancellations stay visible. Result keys live on the coset
/// gamma - l+ + L; branch d^{l+} lands at key v, branch d^{l-} at key v + l.
inline std::map<IntVector, Rat> box_accumulate(const IntVector& l, const FormalSeries& series) {
  IntVector lplus(l.size()), lminus(l.size());
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l[i] > 0) lplus[i] = l[i];
    if (l[i] < 0) lminus[i] = -l[i];
  }
  std::map<IntVector, Rat> acc;
  for (const auto& [v, c] : series.terms) {
    Rat fplus = 1, fminus = 1;
    for (std::size_t i = 0; i < l.size(); ++i) {
      Rat e = series.gamma[i] + Rat(v[i]);
      if (lplus[i] > 0) fplus *= falling_factorial(e, static_cast<long>(lplus[i]));
      if (lminus[i] > 0) fminus *= falling_factorial(e, static_cast<long>(lminus[i]));
    }
    acc[v] += c * fplus;
    acc[v + l] -= c * fminus;
  }
  return acc;
}

}  // namespace detail

/// Exact term-wise application of box_l = d^{l+} - d^{l-}. The result series
/// has exponent gamma - l+ and inherits the source truncation spec.
inline FormalSeries box_apply(const IntVector& l, const FormalSeries& series) {
  if (l.size() != series.gamma.size()) throw DegenerateInputError("box_apply: length mismatch");
  FormalSeries out;
  out.truncation = series.truncation;
  out.gamma = series.gamma;
  for (std::size_t i = 0; i < l.size(); ++i)
    if (l[i] > 0) out.gamma[i] -= Rat(l[i]);
  for (auto& [v, c] : detail::box_accumulate(l, series))
    if (c != 0) out.terms.emplace(v, std::move(c));
  return out;
}

/// Residual of each order-1 Euler operator on each term, flattened in
/// (operator, term) order; identically zero for structurally valid series.
inline std::vector<Rat> euler_residual(const GkzSystem& system, const FormalSeries& series) {
  std::size_t p1 = system.config.points.size();
  std::vector<Rat> out;
  for (std::size_t u = 0; u < system.euler_matrix.rows(); ++u) {
    for (const auto& [v, c] : series.terms) {
      Rat val = -Rat(system.beta[u]);
      for (std::size_t i = 0; i < p1; ++i)
        val += Rat(system.euler_matrix(u, i)) * (series.gamma[i] + Rat(v[i]));
      out.push_back(c * val);
    }
  }
  return out;
}

/// Truncated torus-cycle period: coefficient (-1)^{sum l} (sum l)!/prod l_i!
/// at the relation (-sum l, l_1, ..., l_p), over l >= 0 with sum l_i mu_i = 0
/// and sum l_i <= N. Constant term 1, gamma = (-1, 0, ..., 0).
inline FormalSeries torus_cycle_series(const PointConfig& cfg, long order) {
  if (order < 0) throw DegenerateInputError("torus_cycle_series: negative order");
  int p = cfg.p();
  FormalSeries series;
  series.gamma = canonical_gamma(p);
  series.truncation.mode = TruncationSpec::Mode::NonnegTail;
  series.truncation.max_total_degree = order;

  std::vector<IntVector> mus;
  for (int i = 1; i <= p; ++i) mus.push_back(cfg.projected(i));
  std::vector<Int> tuple(static_cast<std::size_t>(p), Int(0));
  IntVector partial(static_cast<std::size_t>(cfg.n));

  auto emit = [&](long total) {
    Int numer = factorial(total);
    Int denom = 1;
    IntVector key(static_cast<std::size_t>(p) + 1);
    key[0] = -Int(total);
    for (int i = 0; i < p; ++i) {
      denom *= factorial(static_cast<long>(tuple[static_cast<std::size_t>(i)]));
      key[static_cast<std::size_t>(i) + 1] = tuple[static_cast<std::size_t>(i)];
    }
    Rat coeff(numer, denom);
    if (total % 2 != 0) coeff = -coeff;
    series.terms.emplace(std::move(key), std::move(coeff));
  };

  // depth-first over tuples (l_1..l_p) with sum <= order
  auto rec = [&](auto&& self, int idx, long used) -> void {
    if (idx == p) {
      if (partial.is_zero()) emit(used);
      return;
    }
    for (long li = 0; used + li <= order; ++li) {
      if (li > 0) partial = partial + mus[static_cast<std::size_t>(idx)];
      tuple[static_cast<std::size_t>(idx)] = li;
      self(self, idx + 1, used + li);
    }
    // undo
    long last = static_cast<long>(tuple[static_cast<std::size_t>(idx)]);
    for (long li = 0; li < last; ++li) partial = partial - mus[static_cast<std::size_t>(idx)];
    tuple[static_cast<std::size_t>(idx)] = 0;
  };
  rec(rec, 0, 0);
  return series;
}

/// x-coordinate coefficient at multi-index m of a BasisMonoid series:
/// (-1)^{l_0} times the stored a-coordinate coefficient at l = sum m_k b_k.
inline Rat x_coefficient(const FormalSeries& series, const std::vector<long>& m) {
  if (series.truncation.mode != TruncationSpec::Mode::BasisMonoid)
    throw DegenerateInputError("x_coefficient: series has no basis-monoid truncation");
  const auto& basis = series.truncation.basis;
  if (m.size() != basis.size()) throw DegenerateInputError("x_coefficient: index length mismatch");
  IntVector l(basis[0].size());
  for (std::size_t k = 0; k < basis.size(); ++k) l = l + Int(m[k]) * basis[k];
  Rat c = series.coefficient(l);
  return l[0] % 2 != 0 ? -c : c;
}

/// Local solution at the fixed point of tau: x-coefficient
/// Gamma(-sum m_k l^(k)_0 + 1) / prod_i Gamma(sum m_k l^(k)_i + 1) over
/// m >= 0 with sum m_k <= N and sum m_k l^(k)_0 <= 0, stored in
/// a-coordinates at key l = sum m_k l^(k). The tau basis must be a Z-basis
/// of L whose cone contains every primitive relation.
inline FormalSeries local_series(const Fan& fan, const std::vector<IntVector>& tau_basis,
                                 long order) {
  if (order < 0) throw DegenerateInputError("local_series: negative order");
  PointConfig cfg = point_config(fan);
  int p = cfg.p();
  int rank_l = p - cfg.n;
  if (static_cast<int>(tau_basis.size()) != rank_l)
    throw InvalidTauError("local_series: basis must have p - n vectors");
  IntMatrix config = cfg.matrix();
  for (const IntVector& b : tau_basis) {
    if (static_cast<int>(b.size()) != p + 1)
      throw InvalidTauError("local_series: basis vector length mismatch");
    if (!(config * b).is_zero())
      throw InvalidTauError("local_series: basis vector is not a relation of A");
  }
  {
    std::vector<IntVector> coords;
    for (const IntVector& b : tau_basis) {
      auto c = express_in_lattice_basis(cfg.relation_basis, b);
      if (!c) throw InvalidTauError("local_series: basis vector off the relation lattice");
      coords.push_back(*c);
    }
    Int det = determinant(IntMatrix::from_rows(coords));
    if (det != 1 && det != -1)
      throw InvalidTauError("local_series: basis is not a Z-basis of L");
  }
  for (const PrimitiveRelation& rel : primitive_relations(fan)) {
    auto c = express_in_basis(tau_basis, rel.l);
    if (!c) throw InvalidTauError("local_series: primitive relation off the basis span");
    for (std::size_t k = 0; k < c->size(); ++k)
      if ((*c)[k] < 0)
        throw InvalidTauError("local_series: dual cone does not contain a primitive relation");
  }

  FormalSeries series;
  series.gamma = canonical_gamma(p);
  series.truncation.mode = TruncationSpec::Mode::BasisMonoid;
  series.truncation.basis = tau_basis;
  series.truncation.max_total_degree = order;

  std::vector<long> m(tau_basis.size(), 0);
  auto emit = [&]() {
    IntVector l(static_cast<std::size_t>(p) + 1);
    for (std::size_t k = 0; k < tau_basis.size(); ++k) l = l + Int(m[k]) * tau_basis[k];
    if (l[0] > 0) return;  // outside the summation range of the solution
    for (std::size_t i = 1; i < l.size(); ++i)
      if (l[i] < 0) return;  // Gamma pole in the denominator: coefficient 0
    Int numer = factorial(static_cast<long>(-l[0]));
    Int denom = 1;
    for (std::size_t i = 1; i < l.size(); ++i) denom *= factorial(static_cast<long>(l[i]));
    Rat coeff(numer, denom);
    if (l[0] % 2 != 0) coeff = -coeff;  // store a-coordinates: (-1)^{l_0} x-coefficient
    series.terms.emplace(std::move(l), std::move(coeff));
  };
  auto rec = [&](auto&& self, std::size_t k, long used) -> void {
    if (k == m.size()) {
      emit();
      return;
    }
    for (long mk = 0; used + mk <= order; ++mk) {
      m[k] = mk;
      self(self, k + 1, used + mk);
    }
    m[k] = 0;
  };
  rec(rec, 0, 0);
  return series;
}

struct OperatorResidual {
  IntVector op;            // the relation vector behind box_l
  int interior_checked = 0;  // interior residual terms, all exactly zero
  int boundary_terms = 0;    // residual terms touching the truncation edge
  std::vector<std::pair<IntVector, Rat>> failures;  // nonzero interior residuals
};

struct AnnihilationReport {
  std::vector<OperatorResidual> operators;
  bool passed = false;
  int interior_checked = 0;
  int boundary_terms = 0;
};

/// Applies each box operator exactly and checks that every residual term
/// whose two source offsets are inside the known region vanishes. Boundary
/// terms are reported, not judged.
inline AnnihilationReport verify_annihilation(const GkzSystem& system, const FormalSeries& series,
                                              const std::vector<IntVector>& operators) {
  IntMatrix config = system.config.matrix();
  AnnihilationReport rep;
  rep.passed = true;
  for (const IntVector& l : operators) {
    if (static_cast<int>(l.size()) != system.config.p() + 1 || !(config * l).is_zero())
      throw DegenerateInputError("verify_annihilation: operator is not a relation of A");
    OperatorResidual res;
    res.op = l;
    for (const auto& [w, val] : detail::box_accumulate(l, series)) {
      auto r1 = series.truncation.classify(w);      // source of the d^{l+} branch
      auto r2 = series.truncation.classify(w - l);  // source of the d^{l-} branch
      bool interior = r1 != TruncationSpec::Region::Outside &&
                      r2 != TruncationSpec::Region::Outside;
      if (interior) {
        ++res.interior_checked;
        if (val != 0) res.failures.emplace_back(w, val);
      } else {
        ++res.boundary_terms;
      }
    }
    if (!res.failures.empty()) rep.passed = false;
    rep.interior_checked += res.interior_checked;
    rep.boundary_terms += res.boundary_terms;
    rep.operators.push_back(std::move(res));
  }
  return rep;
}

}  // namespace toricmdp
