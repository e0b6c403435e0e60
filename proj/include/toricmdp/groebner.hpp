#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "toricmdp/fan.hpp"
#include "toricmdp/linalg.hpp"

namespace toricmdp {

/// Binomial y^{lplus} - y^{lminus} with disjoint supports.
struct Binomial {
  IntVector lplus, lminus;

  friend bool operator==(const Binomial& a, const Binomial& b) {
    return a.lplus == b.lplus && a.lminus == b.lminus;
  }
};

/// Weight order refined by lex with variable 0 smallest; total on monomials.
struct TermOrder {
  RatVector weight;  // length p+1

  /// -1, 0, +1; zero only for identical exponent vectors.
  int compare(const IntVector& a, const IntVector& b) const {
    Rat wa = dot(weight, a), wb = dot(weight, b);
    if (wa != wb) return wa < wb ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }
};

/// Monomial ideal by its minimal generators (pairwise non-divisible).
struct MonomialIdeal {
  std::vector<IntVector> generators;  // sorted

  friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) {
    return a.generators == b.generators;
  }
};

namespace detail {

inline bool divides(const IntVector& a, const IntVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline IntVector lcm_exponents(const IntVector& a, const IntVector& b) {
  IntVector m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] > b[i] ? a[i] : b[i];
  return m;
}

inline Int total_degree(const IntVector& a) {
  Int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i];
  return d;
}

inline bool coprime_supports(const IntVector& a, const IntVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

/// Strip the common monomial factor; sound for toric (prime) ideals.
inline Binomial strip_content(Binomial b) {
  for (std::size_t i = 0; i < b.lplus.size(); ++i) {
    Int m = b.lplus[i] < b.lminus[i] ? b.lplus[i] : b.lminus[i];
    if (m > 0) {
      b.lplus[i] -= m;
      b.lminus[i] -= m;
    }
  }
  return b;
}

}  // namespace detail

/// Drop generators divisible by another; sort.
inline MonomialIdeal minimalize(std::vector<IntVector> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<IntVector> keep;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < gens.size() && !redundant; ++j)
      if (j != i && detail::divides(gens[j], gens[i])) redundant = true;
    if (!redundant) keep.push_back(gens[i]);
  }
  return MonomialIdeal{std::move(keep)};
}

/// Split a relation vector into the binomial y^{l+} - y^{l-}; checks that l
/// is a relation of the configuration.
inline Binomial binomial_from_relation(const PointConfig& cfg, const IntVector& l) {
  if (static_cast<int>(l.size()) != cfg.p() + 1)
    throw DegenerateInputError("binomial_from_relation: length mismatch");
  IntVector image = cfg.matrix() * l;
  if (!image.is_zero())
    throw DegenerateInputError("binomial_from_relation: vector is not a relation of A");
  Binomial b{IntVector(l.size()), IntVector(l.size())};
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l[i] > 0) b.lplus[i] = l[i];
    if (l[i] < 0) b.lminus[i] = -l[i];
  }
  return b;
}

/// The larger of the two monomials under the order.
inline IntVector leading_term(const Binomial& b, const TermOrder& order) {
  return order.compare(b.lplus, b.lminus) >= 0 ? b.lplus : b.lminus;
}

inline IntVector trailing_term(const Binomial& b, const TermOrder& order) {
  return order.compare(b.lplus, b.lminus) >= 0 ? b.lminus : b.lplus;
}

/// Candidate minimal Groebner basis: one binomial per primitive relation.
/// Requires property (*) and a large Kahler cone.
inline std::vector<Binomial> candidate_groebner_basis(const Fan& fan) {
  StarReport star = property_star(fan);
  if (!star.holds())
    throw DegenerateInputError("candidate_groebner_basis: fan lacks property (*)");
  if (!kahler_cone(fan).is_large)
    throw DegenerateInputError("candidate_groebner_basis: Kahler cone is not large");
  PointConfig cfg = point_config(fan);
  std::vector<Binomial> basis;
  for (const PrimitiveRelation& rel : primitive_relations(fan))
    basis.push_back(binomial_from_relation(cfg, rel.l));
  return basis;
}

struct PairDisposition {
  int i = 0, j = 0;
  enum class Kind { CoprimeSkip, ReducedToZero, IrreducibleRemainder, CapExceeded } kind;
};

struct VerifyReport {
  bool verified = false;
  std::vector<PairDisposition> pairs;
  std::optional<Binomial> remainder_witness;
  int coprime_skips = 0;
  int reductions = 0;
};

namespace detail {

enum class ReduceOutcome { Zero, Irreducible, CapExceeded };

/// Top-reduce a binomial until zero or its leading term escapes every basis
/// leading term; the zero test needs no tail reduction.
inline ReduceOutcome top_reduce(Binomial f, const std::vector<Binomial>& basis,
                                const std::vector<IntVector>& basis_lt, const TermOrder& order,
                                const Int& degree_cap, Binomial* out = nullptr) {
  while (true) {
    if (f.lplus == f.lminus) return ReduceOutcome::Zero;
    bool lead_is_plus = order.compare(f.lplus, f.lminus) >= 0;
    IntVector& lead = lead_is_plus ? f.lplus : f.lminus;
    bool reduced = false;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (!divides(basis_lt[k], lead)) continue;
      const Binomial& g = basis[k];
      bool g_lead_is_plus = basis_lt[k] == g.lplus;
      const IntVector& g_tail = g_lead_is_plus ? g.lminus : g.lplus;
      lead = (lead - basis_lt[k]) + g_tail;
      if (total_degree(lead) > degree_cap) return ReduceOutcome::CapExceeded;
      reduced = true;
      break;
    }
    if (!reduced) {
      if (out) *out = f;
      return ReduceOutcome::Irreducible;
    }
  }
}

inline Binomial s_binomial(const Binomial& a, const IntVector& lt_a, const Binomial& b,
                           const IntVector& lt_b) {
  IntVector m = lcm_exponents(lt_a, lt_b);
  const IntVector& tail_a = lt_a == a.lplus ? a.lminus : a.lplus;
  const IntVector& tail_b = lt_b == b.lplus ? b.lminus : b.lplus;
  // S = y^{m-lt_a} a - y^{m-lt_b} b = y^{m-lt_b+tail_b} - y^{m-lt_a+tail_a}
  return Binomial{(m - lt_b) + tail_b, (m - lt_a) + tail_a};
}

}  // namespace detail

inline Int default_degree_cap(const std::vector<Binomial>& basis) {
  Int max_deg = 1;
  for (const Binomial& b : basis) {
    Int d = detail::total_degree(b.lplus);
    Int d2 = detail::total_degree(b.lminus);
    if (d2 > d) d = d2;
    if (d > max_deg) max_deg = d;
  }
  return 4 * max_deg;
}

/// Buchberger S-pair certificate: every pair either has coprime leading
/// terms or its S-binomial top-reduces to zero by the basis.
inline VerifyReport buchberger_verify(const std::vector<Binomial>& basis, const TermOrder& order) {
  if (basis.empty()) throw DegenerateInputError("buchberger_verify: empty basis");
  VerifyReport rep;
  rep.verified = true;
  Int cap = default_degree_cap(basis);
  std::vector<IntVector> lts;
  for (const Binomial& b : basis) lts.push_back(leading_term(b, order));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      PairDisposition d;
      d.i = static_cast<int>(i);
      d.j = static_cast<int>(j);
      if (detail::coprime_supports(lts[i], lts[j])) {
        d.kind = PairDisposition::Kind::CoprimeSkip;
        ++rep.coprime_skips;
      } else {
        Binomial s = detail::s_binomial(basis[i], lts[i], basis[j], lts[j]);
        Binomial remainder;
        switch (detail::top_reduce(s, basis, lts, order, cap, &remainder)) {
          case detail::ReduceOutcome::Zero:
            d.kind = PairDisposition::Kind::ReducedToZero;
            ++rep.reductions;
            break;
          case detail::ReduceOutcome::Irreducible:
            d.kind = PairDisposition::Kind::IrreducibleRemainder;
            rep.verified = false;
            if (!rep.remainder_witness) rep.remainder_witness = remainder;
            break;
          case detail::ReduceOutcome::CapExceeded:
            d.kind = PairDisposition::Kind::CapExceeded;
            rep.verified = false;
            break;
        }
      }
      rep.pairs.push_back(d);
    }
  return rep;
}

/// Buchberger completion to a minimal reduced Groebner basis of the ideal
/// generated by toric binomials. Throws DegreeCapError past the cap.
inline std::vector<Binomial> buchberger_complete(const std::vector<Binomial>& generators,
                                                 const TermOrder& order, const Int& degree_cap) {
  std::vector<Binomial> g;
  for (const Binomial& b : generators) {
    Binomial s = detail::strip_content(b);
    if (!(s.lplus == s.lminus)) g.push_back(s);
  }
  if (g.empty()) throw DegenerateInputError("buchberger_complete: no nonzero generators");
  std::vector<IntVector> lts;
  for (const Binomial& b : g) lts.push_back(leading_term(b, order));
  std::deque<std::pair<std::size_t, std::size_t>> queue;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) queue.emplace_back(i, j);
  while (!queue.empty()) {
    auto [i, j] = queue.front();
    queue.pop_front();
    if (detail::coprime_supports(lts[i], lts[j])) continue;
    Binomial s = detail::s_binomial(g[i], lts[i], g[j], lts[j]);
    Binomial remainder;
    switch (detail::top_reduce(s, g, lts, order, degree_cap, &remainder)) {
      case detail::ReduceOutcome::Zero:
        break;
      case detail::ReduceOutcome::CapExceeded:
        throw DegreeCapError("buchberger_complete: degree cap exceeded");
      case detail::ReduceOutcome::Irreducible: {
        remainder = detail::strip_content(remainder);
        g.push_back(remainder);
        lts.push_back(leading_term(remainder, order));
        if (detail::total_degree(lts.back()) > degree_cap)
          throw DegreeCapError("buchberger_complete: degree cap exceeded");
        for (std::size_t k = 0; k + 1 < g.size(); ++k) queue.emplace_back(k, g.size() - 1);
        break;
      }
    }
  }
  // minimalize: drop g_i whose leading term is divisible by another's
  std::vector<Binomial> minimal;
  std::vector<IntVector> minimal_lt;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (j == i) continue;
      if (lts[j] == lts[i] ? j < i : detail::divides(lts[j], lts[i])) redundant = true;
    }
    if (!redundant) {
      minimal.push_back(g[i]);
      minimal_lt.push_back(lts[i]);
    }
  }
  // reduce tails against the other elements and orient leading-term first
  std::vector<Binomial> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    IntVector lead = minimal_lt[i];
    IntVector tail = trailing_term(minimal[i], order);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t j = 0; j < minimal.size(); ++j) {
        if (j == i) continue;
        if (detail::divides(minimal_lt[j], tail)) {
          const IntVector& jt = trailing_term(minimal[j], order);
          tail = (tail - minimal_lt[j]) + jt;
          if (detail::total_degree(tail) > degree_cap)
            throw DegreeCapError("buchberger_complete: degree cap exceeded");
          changed = true;
        }
      }
    }
    reduced.push_back(Binomial{lead, tail});
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Binomial& a, const Binomial& b) {
    int c = order.compare(a.lplus, b.lplus);
    return c < 0;
  });
  return reduced;
}

/// Stanley-Reisner ideal of a triangulation over variables 0..p: squarefree
/// monomials of its minimal non-faces.
inline MonomialIdeal stanley_reisner(const Triangulation& t, int p) {
  if (p + 1 > 62) throw DegenerateInputError("stanley_reisner: too many variables");
  std::set<std::uint64_t> faces;
  faces.insert(0);
  std::size_t simplex_size = 0;
  for (const auto& s : t.simplices) {
    simplex_size = std::max(simplex_size, s.size());
    std::uint64_t full = 0;
    for (int v : s) {
      if (v < 0 || v > p) throw DegenerateInputError("stanley_reisner: vertex out of range");
      full |= std::uint64_t{1} << v;
    }
    for (std::uint64_t sub = full;; sub = (sub - 1) & full) {
      faces.insert(sub);
      if (sub == 0) break;
    }
  }
  std::vector<std::vector<std::uint64_t>> by_size(simplex_size + 1);
  for (std::uint64_t f : faces) {
    std::size_t sz = 0;
    for (std::uint64_t b = f; b; b &= b - 1) ++sz;
    by_size[sz].push_back(f);
  }
  std::vector<IntVector> gens;
  for (std::size_t k = 1; k <= simplex_size + 1; ++k) {
    std::set<std::uint64_t> candidates;
    for (std::uint64_t f : by_size[k - 1])
      for (int v = 0; v <= p; ++v)
        if (!(f & (std::uint64_t{1} << v))) candidates.insert(f | (std::uint64_t{1} << v));
    for (std::uint64_t s : candidates) {
      if (faces.count(s)) continue;
      bool minimal = true;
      for (std::uint64_t b = s; b && minimal; b &= b - 1) {
        std::uint64_t lowest = b & (~b + 1);
        if (!faces.count(s & ~lowest)) minimal = false;
      }
      if (!minimal) continue;
      IntVector e(static_cast<std::size_t>(p) + 1);
      for (int v = 0; v <= p; ++v)
        if (s & (std::uint64_t{1} << v)) e[static_cast<std::size_t>(v)] = 1;
      gens.push_back(std::move(e));
    }
  }
  return minimalize(std::move(gens));
}

/// SR_{T0} = LT_omega(I_A) for strictly interior omega; compared as
/// minimalized generator sets.
inline bool check_lt_equals_sr(const Fan& fan, const RatVector& omega) {
  if (!in_secondary_cone(fan, omega, true))
    throw DegenerateInputError("check_lt_equals_sr: omega is not strictly interior");
  std::vector<Binomial> basis = candidate_groebner_basis(fan);
  TermOrder order{omega};
  VerifyReport rep = buchberger_verify(basis, order);
  if (!rep.verified)
    throw InternalConsistencyError("check_lt_equals_sr: candidate basis failed verification");
  std::vector<IntVector> lts;
  for (const Binomial& b : basis) lts.push_back(leading_term(b, order));
  MonomialIdeal lt_ideal = minimalize(std::move(lts));
  MonomialIdeal sr = stanley_reisner(maximal_triangulation(fan), fan.ray_count());
  return lt_ideal == sr;
}

}  // namespace toricmdp
