#pragma once

#include <cmath>
#include <complex>
#include <thread>
#include <vector>

#include "toricmdp/fan.hpp"
#include "toricmdp/series.hpp"

namespace toricmdp {

using Complex = std::complex<double>;

/// Finitely supported Laurent polynomial on the torus, monomials keyed by
/// their exponents in N.
struct LaurentPolynomial {
  std::map<IntVector, Complex> monomials;
};

/// f_A(X, a) = sum a_mu X^mu for the configuration's projected points.
inline LaurentPolynomial laurent_from_config(const PointConfig& cfg,
                                             const std::vector<Complex>& a) {
  if (static_cast<int>(a.size()) != cfg.p() + 1)
    throw DegenerateInputError("laurent_from_config: coefficient count mismatch");
  LaurentPolynomial f;
  for (int i = 0; i <= cfg.p(); ++i) f.monomials[cfg.projected(i)] += a[static_cast<std::size_t>(i)];
  return f;
}

namespace detail {

inline long to_long(const Int& v) { return static_cast<long>(v); }

/// Sum of one slab (fixed first grid coordinate) in lexicographic order.
inline Complex period_slab(const std::vector<std::pair<std::vector<long>, Complex>>& terms,
                           const Complex& a0, const std::vector<Complex>& roots, long grid, int n,
                           long first, double min_abs) {
  long nodes = 1;
  for (int j = 1; j < n; ++j) nodes *= grid;
  std::vector<long> k(static_cast<std::size_t>(n), 0);
  k[0] = first;
  Complex sum = 0;
  for (long step = 0; step < nodes; ++step) {
    long rest = step;
    for (int j = n - 1; j >= 1; --j) {
      k[static_cast<std::size_t>(j)] = rest % grid;
      rest /= grid;
    }
    Complex f = 0;
    for (const auto& [mu, coeff] : terms) {
      long phase = 0;
      for (int j = 0; j < n; ++j)
        phase += mu[static_cast<std::size_t>(j)] * k[static_cast<std::size_t>(j)];
      phase %= grid;
      if (phase < 0) phase += grid;
      f += coeff * roots[static_cast<std::size_t>(phase)];
    }
    if (std::abs(f) < min_abs)
      throw ConvergenceRegimeError("numeric_period: near-zero denominator on the torus grid");
    sum += a0 / f;
  }
  return sum;
}

}  // namespace detail

/// Trapezoid-rule mean of a_0 / f_A over the K^n torus grid: the period
/// integral a_0 Pi_{alpha_0} with the (2 pi i)^n factor divided out.
/// Requires the convergence regime |a_0| > sum_{i>=1} |a_i|.
inline Complex numeric_period(const PointConfig& cfg, const std::vector<Complex>& a, long grid) {
  if (static_cast<int>(a.size()) != cfg.p() + 1)
    throw DegenerateInputError("numeric_period: coefficient count mismatch");
  if (grid < 1) throw DegenerateInputError("numeric_period: grid must be positive");
  double tail = 0;
  for (std::size_t i = 1; i < a.size(); ++i) tail += std::abs(a[i]);
  if (!(std::abs(a[0]) > tail))
    throw ConvergenceRegimeError("numeric_period: require |a_0| > sum |a_i|");

  int n = cfg.n;
  LaurentPolynomial f = laurent_from_config(cfg, a);
  std::vector<std::pair<std::vector<long>, Complex>> terms;
  for (const auto& [mu, coeff] : f.monomials) {
    std::vector<long> e;
    for (int j = 0; j < n; ++j) e.push_back(detail::to_long(mu[static_cast<std::size_t>(j)]));
    terms.emplace_back(std::move(e), coeff);
  }
  std::vector<Complex> roots(static_cast<std::size_t>(grid));
  const double two_pi = 8 * std::atan(1.0);
  for (long k = 0; k < grid; ++k) {
    double t = two_pi * static_cast<double>(k) / static_cast<double>(grid);
    roots[static_cast<std::size_t>(k)] = Complex(std::cos(t), std::sin(t));
  }
  double min_abs = 1e-12 * std::abs(a[0]);

  // one partial sum per slab; combining in slab order keeps the result
  // independent of the thread count
  std::vector<Complex> slabs(static_cast<std::size_t>(grid));
  int threads = std::min<long>(thread_cap(), grid);
  if (threads <= 1) {
    for (long first = 0; first < grid; ++first)
      slabs[static_cast<std::size_t>(first)] =
          detail::period_slab(terms, a[0], roots, grid, n, first, min_abs);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          for (long first = t; first < grid; first += threads)
            slabs[static_cast<std::size_t>(first)] =
                detail::period_slab(terms, a[0], roots, grid, n, first, min_abs);
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  Complex total = 0;
  for (const Complex& s : slabs) total += s;
  double nodes = std::pow(static_cast<double>(grid), n);
  return total / nodes;
}

/// Canonical coordinates x_k = (-1)^{l^(k)_0} prod_mu a_mu^{l^(k)_mu}.
inline std::vector<Complex> coordinates_x(const PointConfig& cfg,
                                          const std::vector<IntVector>& tau_basis,
                                          const std::vector<Complex>& a) {
  if (static_cast<int>(a.size()) != cfg.p() + 1)
    throw DegenerateInputError("coordinates_x: coefficient count mismatch");
  for (const Complex& ai : a)
    if (ai == Complex(0)) throw DegenerateInputError("coordinates_x: zero coordinate");
  std::vector<Complex> x;
  for (const IntVector& l : tau_basis) {
    Complex v = 1;
    for (std::size_t i = 0; i < l.size(); ++i) {
      long e = detail::to_long(l[i]);
      for (long k = 0; k < e; ++k) v *= a[i];
      for (long k = 0; k > e; --k) v /= a[i];
    }
    if (l[0] % 2 != 0) v = -v;
    x.push_back(v);
  }
  return x;
}

/// Evaluate a BasisMonoid series at the x-coordinates (truncated sum).
inline Complex evaluate_series_x(const FormalSeries& series, const std::vector<Complex>& x) {
  if (series.truncation.mode != TruncationSpec::Mode::BasisMonoid)
    throw DegenerateInputError("evaluate_series_x: series has no basis-monoid truncation");
  const auto& basis = series.truncation.basis;
  Complex total = 0;
  for (const auto& [l, c] : series.terms) {
    auto m = express_in_lattice_basis(basis, l);
    Complex term = static_cast<double>(Rat(l[0] % 2 != 0 ? -c : c).convert_to<double>());
    for (std::size_t k = 0; k < basis.size(); ++k) {
      long mk = detail::to_long((*m)[k]);
      for (long s = 0; s < mk; ++s) term *= x[k];
    }
    total += term;
  }
  return total;
}

}  // namespace toricmdp
