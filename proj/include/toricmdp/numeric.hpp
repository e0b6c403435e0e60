#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace toricmdp {

// Exact scalars. All lattice and polyhedral computations run on these;
// doubles appear only in the numeric quadrature oracle.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Ambient dimension exceeds the documented double-description bound.
class DimensionBoundError : public Error {
 public:
  explicit DimensionBoundError(const std::string& what) : Error(what) {}
};

/// Input fails a structural precondition (dimension mismatch, degenerate
/// configuration, dependent basis, ...).
class DegenerateInputError : public Error {
 public:
  explicit DegenerateInputError(const std::string& what) : Error(what) {}
};

/// A quantity that must be integral came out fractional; signals fan data
/// inconsistent with regularity.
class IntegralityError : public Error {
 public:
  explicit IntegralityError(const std::string& what) : Error(what) {}
};

/// Buchberger completion exceeded its degree cap.
class DegreeCapError : public Error {
 public:
  explicit DegreeCapError(const std::string& what) : Error(what) {}
};

/// User-supplied cone tau is not regular, not large, or not inside the
/// closed Kahler cone.
class InvalidTauError : public Error {
 public:
  explicit InvalidTauError(const std::string& what) : Error(what) {}
};

/// Quadrature parameters lie outside the convergence regime |a0| > sum|a_i|.
class ConvergenceRegimeError : public Error {
 public:
  explicit ConvergenceRegimeError(const std::string& what) : Error(what) {}
};

/// Two criteria the theory proves equivalent disagreed; falsifies the
/// implementation, not the inputs.
class InternalConsistencyError : public Error {
 public:
  explicit InternalConsistencyError(const std::string& what) : Error(what) {}
};

inline Int int_gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// gcd g > 0 together with s, t such that s*a + t*b = g (g = 0 only for a = b = 0).
struct XgcdResult {
  Int g, s, t;
};

inline XgcdResult xgcd(const Int& a, const Int& b) {
  Int old_r = a, r = b;
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;  // truncated division is fine for the invariant
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

/// Floor division, q = floor(a/b) for b > 0.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int factorial(long n) {
  Int f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Falling factorial x(x-1)...(x-k+1); empty product for k <= 0.
inline Rat falling_factorial(const Rat& x, long k) {
  Rat prod = 1;
  for (long j = 0; j < k; ++j) prod *= x - j;
  return prod;
}

/// Thread cap from TORICMDP_THREADS (>= 1); defaults to 1.
inline int thread_cap() {
  static const int cap = [] {
    const char* env = std::getenv("TORICMDP_THREADS");
    if (!env) return 1;
    int v = std::atoi(env);
    return v >= 1 ? v : 1;
  }();
  return cap;
}

}  // namespace toricmdp
