// Command-line driver: certifies maximal degeneracy points of the GKZ system
// attached to a complete regular fan, stage by stage.
//
// Exit codes: 0 certified/true, 1 falsified, 2 invalid input.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <toricmdp/toricmdp.hpp>

namespace mdp = toricmdp;

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitInvalid = 2;

struct Output {
  std::string format = "text";
  std::string out_path;

  void emit(const mdp::Report& report) const {
    std::string text = format == "json" ? mdp::render_json(report) : mdp::render_text(report);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw mdp::Error("cannot open output file " + out_path);
      f << text;
    }
  }
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw mdp::Error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

mdp::Rat parse_rat(const std::string& tok) {
  auto slash = tok.find('/');
  try {
    if (slash == std::string::npos) return mdp::Rat(mdp::Int(tok));
    return mdp::Rat(mdp::Int(tok.substr(0, slash)), mdp::Int(tok.substr(slash + 1)));
  } catch (const std::exception&) {
    throw mdp::DegenerateInputError("bad rational '" + tok + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

mdp::RatVector parse_omega(const std::string& s, int expected) {
  std::vector<mdp::Rat> vals;
  for (const std::string& tok : split(s, ',')) vals.push_back(parse_rat(tok));
  if (static_cast<int>(vals.size()) != expected)
    throw mdp::DegenerateInputError("--omega needs " + std::to_string(expected) + " entries");
  return mdp::RatVector(vals);
}

std::vector<mdp::IntVector> parse_tau(const std::string& s, int expected_dim) {
  std::vector<mdp::IntVector> gens;
  for (const std::string& group : split(s, ';')) {
    std::vector<mdp::Int> vals;
    for (const std::string& tok : split(group, ',')) {
      try {
        vals.emplace_back(tok);
      } catch (const std::exception&) {
        throw mdp::DegenerateInputError("bad integer '" + tok + "' in --tau");
      }
    }
    if (static_cast<int>(vals.size()) != expected_dim)
      throw mdp::DegenerateInputError("--tau generators need " + std::to_string(expected_dim) +
                                     " entries each");
    gens.emplace_back(std::move(vals));
  }
  return gens;
}

std::vector<mdp::Complex> parse_coefficients(const std::string& s, int expected) {
  std::vector<mdp::Complex> vals;
  for (const std::string& tok : split(s, ',')) {
    try {
      std::size_t pos = 0;
      double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      vals.emplace_back(v, 0.0);
    } catch (const std::exception&) {
      throw mdp::DegenerateInputError("bad coefficient '" + tok + "'");
    }
  }
  if (static_cast<int>(vals.size()) != expected)
    throw mdp::DegenerateInputError("--a needs " + std::to_string(expected) + " entries");
  return vals;
}

mdp::Report fan_summary(const mdp::FanFile& ff) {
  mdp::Report r = mdp::Report::object();
  if (!ff.name.empty()) r["name"] = ff.name;
  r["dim"] = ff.dim;
  r["rays"] = mdp::Report::array();
  for (const auto& ray : ff.rays) r["rays"].push_back(mdp::report_value(ray));
  r["max_cones"] = mdp::Report::array();
  for (const auto& cone : ff.cones) r["max_cones"].push_back(cone);
  return r;
}

mdp::Report collection_value(const mdp::PrimitiveCollection& pc) {
  mdp::Report arr = mdp::Report::array();
  for (int i : pc.ray_indices) arr.push_back(i);
  return arr;
}

mdp::Report relation_value(const mdp::PrimitiveRelation& rel) {
  mdp::Report r = mdp::Report::object();
  r["collection"] = collection_value(rel.collection);
  r["l"] = mdp::report_value(rel.l);
  r["c0"] = mdp::to_string(rel.c0);
  mdp::Report gens = mdp::Report::object();
  for (const auto& [ray, c] : rel.c) gens[std::to_string(ray)] = mdp::to_string(c);
  r["generator_coefficients"] = gens;
  return r;
}

mdp::Report validation_value(const mdp::ValidationReport& v) {
  mdp::Report r = mdp::Report::object();
  r["regular"] = v.regular;
  r["complete"] = v.complete;
  if (v.irregular_cone) r["irregular_cone"] = *v.irregular_cone;
  if (v.non_primitive_ray) r["non_primitive_ray"] = *v.non_primitive_ray;
  if (!v.completeness_failure.empty()) r["completeness_failure"] = v.completeness_failure;
  return r;
}

mdp::Report star_value(const mdp::StarReport& s) {
  mdp::Report r = mdp::Report::object();
  r["nef_criterion"] = s.nef_criterion;
  r["boundary_criterion"] = s.boundary_criterion;
  r["holds"] = s.holds();
  if (s.nef_witness) r["nef_witness"] = collection_value(*s.nef_witness);
  if (s.interior_ray) r["interior_ray"] = *s.interior_ray;
  return r;
}

mdp::Report index_value(const mdp::IndexReport& idx) {
  mdp::Report r = mdp::Report::object();
  r["cones_independent"] = idx.cones_independent;
  r["gamma0_forced"] = idx.gamma0_forced;
  r["relations_vanish"] = idx.relations_vanish;
  r["dual_generators_positive"] = idx.dual_generators_positive;
  r["passed"] = idx.passed();
  return r;
}

mdp::Report annihilation_value(const mdp::AnnihilationReport& ann) {
  mdp::Report r = mdp::Report::object();
  r["passed"] = ann.passed;
  r["interior_checked"] = ann.interior_checked;
  r["boundary_terms"] = ann.boundary_terms;
  mdp::Report ops = mdp::Report::array();
  for (const auto& op : ann.operators) {
    mdp::Report o = mdp::Report::object();
    o["operator"] = mdp::report_value(op.op);
    o["interior_checked"] = op.interior_checked;
    o["boundary_terms"] = op.boundary_terms;
    if (!op.failures.empty()) {
      mdp::Report fails = mdp::Report::array();
      for (const auto& [key, val] : op.failures) {
        mdp::Report f = mdp::Report::object();
        f["offset"] = mdp::report_value(key);
        f["residual"] = mdp::to_string(val);
        fails.push_back(f);
      }
      o["failures"] = fails;
    }
    ops.push_back(o);
  }
  r["operators"] = ops;
  return r;
}

mdp::Fan load_valid_fan(const mdp::FanFile& ff) {
  mdp::Fan fan = mdp::to_fan(ff);
  mdp::ValidationReport v = mdp::validate(fan);
  if (!v.ok())
    throw mdp::DegenerateInputError("fan must be complete and regular for this command (run "
                                   "'validate' for the witness)");
  return fan;
}

std::vector<mdp::IntVector> resolve_tau(const mdp::KahlerCone& kc, const std::string& tau_arg,
                                       int rank_l) {
  if (tau_arg.empty()) return mdp::default_tau(kc);
  return parse_tau(tau_arg, rank_l);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact certification of GKZ maximal degeneracy points for complete regular fans"};
  app.require_subcommand(1);

  Output output;
  app.add_option("--format", output.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--out", output.out_path, "write the report to a file instead of stdout");

  std::string file;
  std::string omega_arg, tau_arg, a_arg;
  long order = -1;
  long grid = 64;
  long degree_cap = 0;

  CLI::App* cmd_validate = app.add_subcommand("validate", "check regularity and completeness");
  cmd_validate->add_option("file", file)->required();

  CLI::App* cmd_relations =
      app.add_subcommand("relations", "relation lattice basis and primitive relations");
  cmd_relations->add_option("file", file)->required();

  CLI::App* cmd_star = app.add_subcommand("star", "property (*) by both criteria");
  cmd_star->add_option("file", file)->required();

  CLI::App* cmd_kahler = app.add_subcommand("kahler", "Kahler cone in the secondary fan");
  cmd_kahler->add_option("file", file)->required();

  CLI::App* cmd_groebner =
      app.add_subcommand("groebner", "minimal Groebner basis of the toric ideal");
  cmd_groebner->add_option("file", file)->required();
  cmd_groebner->add_option("--omega", omega_arg, "weight vector w0,...,wp (default: interior)");
  cmd_groebner->add_option("--degree-cap", degree_cap,
                           "completion degree cap (default: 4x max generator degree)");

  CLI::App* cmd_index = app.add_subcommand("index", "unique-index certificate");
  cmd_index->add_option("file", file)->required();

  CLI::App* cmd_series = app.add_subcommand("series", "truncated local period series");
  cmd_series->add_option("file", file)->required();
  cmd_series->add_option("--order", order, "truncation order N")->required();
  cmd_series->add_option("--tau", tau_arg, "tau generators g1;g2;... in L* coordinates");

  CLI::App* cmd_certify = app.add_subcommand("certify-mdp", "full maximal-degeneracy certificate");
  cmd_certify->add_option("file", file)->required();
  cmd_certify->add_option("--order", order, "annihilation check order N")->required();
  cmd_certify->add_option("--tau", tau_arg, "tau generators g1;g2;... in L* coordinates");

  CLI::App* cmd_oracle = app.add_subcommand("oracle", "numeric period by torus quadrature");
  cmd_oracle->add_option("file", file)->required();
  cmd_oracle->add_option("--a", a_arg, "coefficients a0,...,ap")->required();
  cmd_oracle->add_option("--grid", grid, "grid points per circle")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    mdp::FanFile ff = mdp::parse_fan_file(read_file(file));
    mdp::Report report = mdp::Report::object();
    int exit_code = kExitTrue;

    if (cmd_validate->parsed()) {
      report["command"] = "validate";
      report["fan"] = fan_summary(ff);
      mdp::Fan fan = mdp::to_fan(ff);
      mdp::ValidationReport v = mdp::validate(fan);
      report["validation"] = validation_value(v);
      exit_code = v.ok() ? kExitTrue : kExitFalse;
    } else if (cmd_relations->parsed()) {
      report["command"] = "relations";
      report["fan"] = fan_summary(ff);
      mdp::Fan fan = load_valid_fan(ff);
      mdp::PointConfig cfg = mdp::point_config(fan);
      report["relation_basis"] = mdp::Report::array();
      for (const auto& b : cfg.relation_basis)
        report["relation_basis"].push_back(mdp::report_value(b));
      report["primitive_relations"] = mdp::Report::array();
      for (const auto& rel : mdp::primitive_relations(fan))
        report["primitive_relations"].push_back(relation_value(rel));
      report["chow_ring_dimension"] = mdp::chow_ring_dimension(fan);
    } else if (cmd_star->parsed()) {
      report["command"] = "star";
      report["fan"] = fan_summary(ff);
      mdp::Fan fan = load_valid_fan(ff);
      mdp::StarReport s = mdp::property_star(fan);
      report["star"] = star_value(s);
      exit_code = s.holds() ? kExitTrue : kExitFalse;
    } else if (cmd_kahler->parsed()) {
      report["command"] = "kahler";
      report["fan"] = fan_summary(ff);
      mdp::Fan fan = load_valid_fan(ff);
      mdp::KahlerCone kc = mdp::kahler_cone(fan);
      report["generators"] = mdp::Report::array();
      for (const auto& g : kc.cone.generators) report["generators"].push_back(mdp::report_value(g));
      report["is_large"] = kc.is_large;
      report["relation_coordinates"] = mdp::Report::array();
      for (const auto& a : kc.relation_coords)
        report["relation_coordinates"].push_back(mdp::report_value(a));
      exit_code = kc.is_large ? kExitTrue : kExitFalse;
    } else if (cmd_groebner->parsed()) {
      report["command"] = "groebner";
      report["fan"] = fan_summary(ff);
      mdp::Fan fan = load_valid_fan(ff);
      mdp::RatVector omega = omega_arg.empty() ? mdp::interior_omega(fan)
                                              : parse_omega(omega_arg, fan.ray_count() + 1);
      report["omega"] = mdp::report_value(omega);
      bool interior = mdp::in_secondary_cone(fan, omega, true);
      report["omega_strictly_interior"] = interior;
      mdp::TermOrder term_order{omega};
      std::vector<mdp::Binomial> basis;
      if (interior) {
        report["mode"] = "candidate";
        basis = mdp::candidate_groebner_basis(fan);
      } else {
        report["mode"] = "completion";
        mdp::Int cap = degree_cap > 0 ? mdp::Int(degree_cap)
                                     : mdp::default_degree_cap(mdp::candidate_groebner_basis(fan));
        basis = mdp::buchberger_complete(mdp::candidate_groebner_basis(fan), term_order, cap);
      }
      mdp::VerifyReport vr = mdp::buchberger_verify(basis, term_order);
      report["basis"] = mdp::Report::array();
      for (const auto& b : basis) {
        mdp::Report bin = mdp::Report::object();
        bin["lplus"] = mdp::report_value(b.lplus);
        bin["lminus"] = mdp::report_value(b.lminus);
        bin["leading_term"] = mdp::report_value(mdp::leading_term(b, term_order));
        report["basis"].push_back(bin);
      }
      report["verified"] = vr.verified;
      report["coprime_skips"] = vr.coprime_skips;
      report["reductions"] = vr.reductions;
      mdp::MonomialIdeal sr = mdp::stanley_reisner(mdp::maximal_triangulation(fan), fan.ray_count());
      report["stanley_reisner"] = mdp::Report::array();
      for (const auto& g : sr.generators) report["stanley_reisner"].push_back(mdp::report_value(g));
      bool ltsr = false;
      if (interior) {
        ltsr = mdp::check_lt_equals_sr(fan, omega);
        report["lt_equals_sr"] = ltsr;
        exit_code = vr.verified && ltsr ? kExitTrue : kExitFalse;
      } else {
        std::vector<mdp::IntVector> lts;
        for (const auto& b : basis) lts.push_back(mdp::leading_term(b, term_order));
        ltsr = mdp::minimalize(lts) == sr;
        report["lt_equals_sr"] = ltsr;
        exit_code = vr.verified ? kExitTrue : kExitFalse;
      }
    } else if (cmd_index->parsed()) {
      report["command"] = "index";
      report["fan"] = fan_summary(ff);
      mdp::Fan fan = load_valid_fan(ff);
      mdp::IndexReport idx = mdp::unique_index_certificate(fan);
      report["index"] = index_value(idx);
      exit_code = idx.passed() ? kExitTrue : kExitFalse;
    } else if (cmd_series->parsed()) {
      report["command"] = "series";
      report["fan"] = fan_summary(ff);
      mdp::Fan fan = load_valid_fan(ff);
      mdp::PointConfig cfg = mdp::point_config(fan);
      mdp::KahlerCone kc = mdp::kahler_cone(fan);
      std::vector<mdp::IntVector> tau = resolve_tau(kc, tau_arg, cfg.p() - cfg.n);
      std::vector<mdp::IntVector> dual = mdp::tau_dual_basis(cfg, tau);
      mdp::FormalSeries series = mdp::local_series(fan, dual, order);
      report["order"] = order;
      report["tau_generators"] = mdp::Report::array();
      for (const auto& g : tau) report["tau_generators"].push_back(mdp::report_value(g));
      report["tau_dual_basis"] = mdp::Report::array();
      for (const auto& d : dual) report["tau_dual_basis"].push_back(mdp::report_value(d));
      report["gamma"] = mdp::report_value(series.gamma);
      // terms sorted by (total degree, multi-index)
      std::vector<std::pair<std::vector<long>, const mdp::IntVector*>> order_keys;
      for (const auto& [l, c] : series.terms) {
        auto m = mdp::express_in_lattice_basis(dual, l);
        std::vector<long> mk;
        long total = 0;
        for (std::size_t k = 0; k < m->size(); ++k) {
          long v = static_cast<long>((*m)[k]);
          mk.push_back(v);
          total += v;
        }
        mk.insert(mk.begin(), total);
        order_keys.emplace_back(std::move(mk), &l);
      }
      std::sort(order_keys.begin(), order_keys.end());
      report["terms"] = mdp::Report::array();
      for (const auto& [mk, lptr] : order_keys) {
        mdp::Report t = mdp::Report::object();
        mdp::Report marr = mdp::Report::array();
        for (std::size_t k = 1; k < mk.size(); ++k) marr.push_back(mk[k]);
        t["m"] = marr;
        t["l"] = mdp::report_value(*lptr);
        std::vector<long> m(mk.begin() + 1, mk.end());
        t["x_coefficient"] = mdp::to_string(mdp::x_coefficient(series, m));
        report["terms"].push_back(t);
      }
      // structural check: Euler residuals vanish identically
      mdp::GkzSystem sys = mdp::make_gkz_system(cfg);
      bool euler_zero = true;
      for (const mdp::Rat& r : mdp::euler_residual(sys, series))
        if (r != 0) euler_zero = false;
      report["euler_residuals_zero"] = euler_zero;
      exit_code = euler_zero ? kExitTrue : kExitFalse;
    } else if (cmd_certify->parsed()) {
      report["command"] = "certify-mdp";
      report["fan"] = fan_summary(ff);
      mdp::Fan fan = load_valid_fan(ff);
      mdp::PointConfig cfg = mdp::point_config(fan);
      report["order"] = order;
      // theorem hypotheses come before any tau handling: a fan that fails
      // them is falsified, not invalid input
      mdp::StarReport star = mdp::property_star(fan);
      mdp::KahlerCone kc = mdp::kahler_cone(fan);
      if (!star.holds() || !kc.is_large) {
        report["star_ok"] = star.holds();
        report["kahler_large"] = kc.is_large;
        report["star"] = star_value(star);
        report["certified"] = false;
        output.emit(report);
        return kExitFalse;
      }
      std::vector<mdp::IntVector> tau = resolve_tau(kc, tau_arg, cfg.p() - cfg.n);
      mdp::MdpReport rep = mdp::verify_max_degeneracy(fan, tau, order);
      report["tau_generators"] = mdp::Report::array();
      for (const auto& g : tau) report["tau_generators"].push_back(mdp::report_value(g));
      report["star_ok"] = rep.star_ok;
      report["kahler_large"] = rep.kahler_large;
      report["tau_valid"] = rep.tau_valid;
      report["index_ok"] = rep.index_ok;
      report["annihilation_ok"] = rep.annihilation_ok;
      report["star"] = star_value(rep.star);
      if (rep.tau_valid) {
        report["index"] = index_value(rep.index);
        report["tau_dual_basis"] = mdp::Report::array();
        for (const auto& d : rep.tau_dual)
          report["tau_dual_basis"].push_back(mdp::report_value(d));
        report["annihilation"] = annihilation_value(rep.annihilation);
      }
      report["certified"] = rep.certified();
      exit_code = rep.certified() ? kExitTrue : kExitFalse;
    } else if (cmd_oracle->parsed()) {
      report["command"] = "oracle";
      report["fan"] = fan_summary(ff);
      mdp::Fan fan = load_valid_fan(ff);
      mdp::PointConfig cfg = mdp::point_config(fan);
      std::vector<mdp::Complex> a = parse_coefficients(a_arg, cfg.p() + 1);
      mdp::Complex value = mdp::numeric_period(cfg, a, grid);
      report["grid"] = grid;
      report["a"] = mdp::Report::array();
      for (const auto& ai : a) report["a"].push_back(format_double(ai.real()));
      report["period_re"] = format_double(value.real());
      report["period_im"] = format_double(value.imag());
    }

    output.emit(report);
    return exit_code;
  } catch (const mdp::ParseError& e) {
    std::cerr << "error: " << file << ": " << e.what() << "\n";
    return kExitInvalid;
  } catch (const mdp::InternalConsistencyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFalse;
  } catch (const mdp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (...) {
    std::cerr << "error: unknown failure\n";
    return kExitInvalid;
  }
}
