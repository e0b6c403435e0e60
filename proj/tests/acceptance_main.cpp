// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exits nonzero on any failure.
//
// The CLI checks need TORICMDP_CLI set to the built binary path (ctest sets
// it automatically).

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <toricmdp/toricmdp.hpp>

#include "fixtures.hpp"

using namespace toricmdp;

namespace {

struct Check {
  std::vector<std::string> failures;

  void expect(bool cond, const std::string& what) {
    if (!cond) failures.push_back(what);
  }
};

int run_cli(const std::string& args, Check& c) {
  const char* cli = std::getenv("TORICMDP_CLI");
  if (!cli) {
    c.expect(false, "TORICMDP_CLI not set; cannot run the CLI check");
    return -1;
  }
  std::string cmd = std::string(cli) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Int fact(long n) {
  Int f = 1;
  while (n > 1) f *= n--;
  return f;
}

// ---------------------------------------------------------------------------

void criterion_1_quintic(Check& c) {
  Fan fan = fixtures::p4();
  PointConfig cfg = point_config(fan);
  IntVector expect{-5, 1, 1, 1, 1, 1};
  c.expect(cfg.relation_basis.size() == 1 &&
               (cfg.relation_basis[0] == expect || cfg.relation_basis[0] == -expect),
           "relation basis is not +-(-5,1,1,1,1,1)");
  auto cols = primitive_collections(fan);
  c.expect(cols.size() == 1 && cols[0].ray_indices == std::vector<int>{0, 1, 2, 3, 4},
           "primitive collections differ from the single 5-ray collection");
  StarReport star = property_star(fan);
  c.expect(star.nef_criterion && star.boundary_criterion, "property (*) fails");

  FormalSeries local = local_series(fan, {expect}, 3);
  const long want[4] = {1, 120, 113400, 168168000};
  for (long m = 0; m <= 3; ++m)
    c.expect(x_coefficient(local, {m}) == want[m],
             "series coefficient at m=" + std::to_string(m) + " differs");

  FormalSeries torus = torus_cycle_series(cfg, 15);
  AnnihilationReport ann = verify_annihilation(make_gkz_system(cfg), torus, {expect});
  c.expect(ann.passed && ann.interior_checked > 0,
           "box operator interior residuals at N=15 are not exactly zero");

  c.expect(run_cli("certify-mdp " + fixtures::data_path("p4.fan") + " --order 6", c) == 0,
           "certify-mdp did not exit 0");
}

void criterion_2_p1(Check& c) {
  Fan fan = fixtures::p1();
  PointConfig cfg = point_config(fan);
  FormalSeries local = local_series(fan, {IntVector{-2, 1, 1}}, 10);
  for (long m = 0; m <= 10; ++m)
    c.expect(x_coefficient(local, {m}) == Rat(fact(2 * m), fact(m) * fact(m)),
             "series coefficient at m=" + std::to_string(m) + " is not (2m)!/(m!)^2");

  std::vector<Complex> a = {Complex(1), Complex(0.1), Complex(0.1)};
  Complex quad = numeric_period(cfg, a, 256);
  double closed = 1.0 / std::sqrt(1.0 - 4 * 0.01);
  c.expect(std::abs(quad - Complex(closed)) < 1e-10,
           "numeric period differs from (1-4x)^{-1/2} beyond 1e-10");
  std::vector<Complex> x = coordinates_x(cfg, {IntVector{-2, 1, 1}}, a);
  c.expect(std::abs(quad - evaluate_series_x(local, x)) < 1e-10,
           "numeric period differs from the N=10 series beyond 1e-10");
}

void criterion_3_f1(Check& c) {
  Fan fan = fixtures::f1();
  PointConfig cfg = point_config(fan);
  auto rels = primitive_relations(fan);
  c.expect(rels.size() == 2 && rels[0].l == IntVector{-1, 1, -1, 1, 0} &&
               rels[1].l == IntVector{-2, 0, 1, 0, 1},
           "primitive relations differ from {(-1,1,-1,1,0),(-2,0,1,0,1)}");

  KahlerCone kc = kahler_cone(cfg, rels);
  c.expect(kc.is_large && rank(IntMatrix::from_rows(kc.cone.generators)) == 2,
           "Kahler cone is not 2-dimensional large");

  RatVector omega{Rat(0), Rat(1), Rat(1), Rat(1), Rat(1)};
  auto basis = candidate_groebner_basis(fan);
  c.expect(basis.size() == 2 &&
               basis[0] == Binomial{IntVector{0, 1, 0, 1, 0}, IntVector{1, 0, 1, 0, 0}} &&
               basis[1] == Binomial{IntVector{0, 0, 1, 0, 1}, IntVector{2, 0, 0, 0, 0}},
           "candidate basis is not {y1 y3 - y0 y2, y2 y4 - y0^2}");
  VerifyReport vr = buchberger_verify(basis, TermOrder{omega});
  c.expect(vr.verified, "candidate basis fails buchberger_verify at omega=(0,1,1,1,1)");
  c.expect(check_lt_equals_sr(fan, omega), "LT ideal differs from the Stanley-Reisner ideal");
  c.expect(cross_check_T0(fan, omega), "lower-hull subdivision at omega differs from T0");

  FormalSeries local =
      local_series(fan, {IntVector{-1, 1, -1, 1, 0}, IntVector{-2, 0, 1, 0, 1}}, 10);
  c.expect(x_coefficient(local, {0, 1}) == 2 && x_coefficient(local, {1, 1}) == 6 &&
               x_coefficient(local, {1, 2}) == 60 && x_coefficient(local, {2, 2}) == 90,
           "local series coefficients differ from 2, 6, 60, 90");

  std::vector<Complex> a = {Complex(1), Complex(0.05), Complex(0.05), Complex(0.05),
                            Complex(0.05)};
  Complex quad = numeric_period(cfg, a, 64);
  std::vector<Complex> x =
      coordinates_x(cfg, {IntVector{-1, 1, -1, 1, 0}, IntVector{-2, 0, 1, 0, 1}}, a);
  c.expect(std::abs(quad - evaluate_series_x(local, x)) < 1e-8,
           "quadrature differs from the N=10 series beyond 1e-8");

  c.expect(run_cli("certify-mdp " + fixtures::data_path("f1.fan") + " --order 6", c) == 0,
           "certify-mdp did not exit 0");
}

void criterion_4_unique_index(Check& c) {
  for (const Fan& fan : {fixtures::p1(), fixtures::p2(), fixtures::f1(), fixtures::p4(),
                         fixtures::p1cubed(), fixtures::dp6()}) {
    IndexReport rep = unique_index_certificate(fan);
    c.expect(rep.passed(), "unique_index_certificate fails on a fixture");

    // brute force: every nonzero l in the dual-cone monoid with sum m_k <= 4
    // kills the indicial polynomial at gamma = (-1, 0, ..., 0); dp6 needs an
    // explicit regular subcone of its non-simplicial Kahler cone
    PointConfig cfg = point_config(fan);
    KahlerCone kc = kahler_cone(fan);
    std::vector<IntVector> tau;
    if (is_unimodular_extension(kc.cone.generators))
      tau = default_tau(kc);
    else
      tau = {IntVector{0, -1, -1, -1}, IntVector{0, -1, -1, 0}, IntVector{0, 0, -1, -1},
             IntVector{1, 1, 1, 1}};
    std::vector<IntVector> dual = tau_dual_basis(cfg, tau);
    RatVector gamma = canonical_gamma(cfg.p());
    std::size_t r = dual.size();
    std::vector<long> m(r, 0);
    std::function<void(std::size_t, long)> rec = [&](std::size_t k, long used) {
      if (k == r) {
        IntVector l(static_cast<std::size_t>(cfg.p()) + 1);
        for (std::size_t i = 0; i < r; ++i) l = l + Int(m[i]) * dual[i];
        if (!l.is_zero())
          c.expect(indicial_value(l, gamma) == 0,
                   "nonzero monoid element with nonvanishing indicial value");
        return;
      }
      for (long v = 0; used + v <= 4; ++v) {
        m[k] = v;
        rec(k + 1, used + v);
      }
      m[k] = 0;
    };
    rec(0, 0);
  }
}

void criterion_5_equivalence_suite(Check& c) {
  auto catalog = fixtures::stellar_catalog(20);
  c.expect(catalog.size() >= 20, "catalog has fewer than 20 fans");
  int both_hold = 0;
  for (const Fan& fan : catalog) {
    if (!validate(fan).ok()) {
      c.expect(false, "catalog fan fails validation");
      continue;
    }
    StarReport s = property_star(fan);  // throws on criteria disagreement
    c.expect(s.nef_criterion == s.boundary_criterion, "criteria (ii) and (iii) disagree");
    if (!s.holds()) continue;
    ++both_hold;
    RatVector omega = interior_omega(fan);
    c.expect(in_secondary_cone(fan, omega, true), "constructed omega is not strictly interior");
    VerifyReport vr = buchberger_verify(candidate_groebner_basis(fan), TermOrder{omega});
    c.expect(vr.verified, "candidate basis fails verification on a catalog fan");
    c.expect(check_lt_equals_sr(fan, omega), "LT != SR on a catalog fan");
  }
  c.expect(both_hold >= 1, "no catalog instance satisfies property (*)");
}

void criterion_6_structural(Check& c) {
  // dual_cone double-dual identity on the fixture Kahler cones and samples
  std::vector<Cone> cones;
  for (const Fan& fan : {fixtures::p1(), fixtures::p2(), fixtures::f1(), fixtures::p4()})
    cones.push_back(kahler_cone(fan).cone);
  cones.push_back(Cone{2, {IntVector{1, 0}, IntVector{1, 2}}});
  cones.push_back(Cone{3, {IntVector{1, 0, 0}, IntVector{0, 1, 0}, IntVector{0, 0, 1}}});
  for (const Cone& cone : cones) {
    Cone dd = dual_cone(dual_cone(cone));
    for (const auto& g : cone.generators)
      c.expect(cone_contains(dd, RatVector(g), false), "double dual lost a generator");
    for (const auto& g : dd.generators)
      c.expect(cone_contains(cone, RatVector(g), false), "double dual gained a point");
  }

  // exact relation identity for every computed primitive relation
  auto catalog = fixtures::stellar_catalog(20);
  for (const Fan& fan : catalog) {
    PointConfig cfg = point_config(fan);
    IntMatrix m = cfg.matrix();
    for (const auto& rel : primitive_relations(fan)) {
      c.expect((m * rel.l).is_zero(), "relation identity sum l_mu mubar != 0");
      Int s = 0;
      for (std::size_t i = 0; i < rel.l.size(); ++i) s += rel.l[i];
      c.expect(s == 0, "relation entries do not sum to zero");
    }
  }

  // euler residuals vanish on generated series; local coefficients are
  // nonnegative integers in x-coordinates
  for (const Fan& fan : {fixtures::p1(), fixtures::f1(), fixtures::p4()}) {
    PointConfig cfg = point_config(fan);
    GkzSystem sys = make_gkz_system(cfg);
    FormalSeries torus = torus_cycle_series(cfg, 6);
    for (const Rat& r : euler_residual(sys, torus))
      c.expect(r == 0, "euler residual nonzero on a torus series");
    KahlerCone kc = kahler_cone(fan);
    FormalSeries local = local_series(fan, tau_dual_basis(cfg, default_tau(kc)), 6);
    for (const Rat& r : euler_residual(sys, local))
      c.expect(r == 0, "euler residual nonzero on a local series");
    for (const auto& [l, coeff] : local.terms) {
      Rat x = l[0] % 2 != 0 ? -coeff : coeff;
      c.expect(x >= 0 && denominator(x) == 1, "local series coefficient not a nonneg integer");
    }
  }

  // report rendering round-trips byte-for-byte
  Report rep = Report::object();
  rep["command"] = "structural";
  rep["value"] = to_string(Rat(-22, 7));
  rep["vector"] = report_value(IntVector{-5, 1, 1, 1, 1, 1});
  std::string text = render_json(rep);
  c.expect(render_json(parse_report(text)) == text, "report does not round-trip");
}

struct Criterion {
  int number;
  std::string name;
  double time_limit;  // seconds; 0 = none
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "quintic fixture: basis, collection, star, series, annihilation, certify-mdp", 5.0,
       criterion_1_quintic},
      {2, "P1 fixture: central binomials, quadrature vs closed form and series", 1.0,
       criterion_2_p1},
      {3, "F1 fixture: relations, Kahler, Groebner, T0, series, quadrature, certify-mdp", 10.0,
       criterion_3_f1},
      {4, "unique-index certificate and brute-force indicial vanishing", 0.0,
       criterion_4_unique_index},
      {5, "equivalence suite over >= 20 stellar-subdivision fans", 0.0,
       criterion_5_equivalence_suite},
      {6, "structural invariants: duality, relations, euler, coefficients, reports", 0.0,
       criterion_6_structural},
  };

  int failures = 0;
  for (const Criterion& cr : criteria) {
    Check check;
    auto start = std::chrono::steady_clock::now();
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.time_limit > 0 && seconds >= cr.time_limit) {
      std::ostringstream ss;
      ss << "runtime " << seconds << "s exceeds the " << cr.time_limit << "s bound";
      check.expect(false, ss.str());
    }
    bool ok = check.failures.empty();
    if (!ok) ++failures;
    std::printf("[%s] criterion %d (%.2fs): %s\n", ok ? "PASS" : "FAIL", cr.number, seconds,
                cr.name.c_str());
    for (const std::string& f : check.failures) std::printf("       - %s\n", f.c_str());
  }
  return failures == 0 ? 0 : 1;
}
