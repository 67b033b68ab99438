#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace martbounds {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Search cap for transform maximizations over unbounded supports.
inline constexpr double kSearchCap = 1.0e6;

/// Thrown when an input violates a documented precondition.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when a computation would exceed a configured resource budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// x^k for small integer k by repeated squaring; much faster than std::pow
/// in the Monte Carlo accumulation loops.
inline double ipow(double x, int k) {
  double r = 1.0;
  while (k > 0) {
    if (k & 1) r *= x;
    x *= x;
    k >>= 1;
  }
  return r;
}

/// |x|^p with a multiplication fast path when p is a small integer.
inline double abspow(double x, double p) {
  const double a = std::fabs(x);
  const int k = static_cast<int>(p);
  if (k == p && k >= 0 && k <= 64) return ipow(a, k);
  return std::pow(a, p);
}

/// Deterministic pairwise summation. The recursion shape depends only on n,
/// so the result is bit-identical regardless of how the inputs were produced.
double pairwise_sum(std::span<const double> xs);

/// n log-spaced points on [lo, hi], endpoints included.
std::vector<double> log_spaced(double lo, double hi, std::size_t n);

/// Linear interpolation in (log x, log y); falls back to linear in y when a
/// value is non-positive.
double interp_loglog(double x0, double y0, double x1, double y1, double x);

/// Golden-section maximization of f on [lo, hi].
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  int iters = 200);

/// Golden-section minimization of f on [lo, hi]. Returns the argmin.
double golden_min_arg(const std::function<double(double)>& f, double lo,
                      double hi, int iters = 200);

/// Adaptive Simpson quadrature on [a, b].
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol = 1e-12, int depth = 40);

/// Standard normal quantile (Acklam's rational approximation, |err| < 2e-9).
double normal_quantile(double u);

/// P(Z > x) for standard normal Z.
inline double normal_sf(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::size_t successes, std::size_t trials,
                         double z = 1.96);

/// In-place pool-adjacent-violators fit to a nondecreasing sequence.
/// Returns the largest absolute adjustment applied.
double isotonic_nondecreasing(std::vector<double>& v);

/// exp((1/p) * log E) given log E, stable for huge E.
inline double exp_div(double log_value, double p) {
  return std::exp(log_value / p);
}

}  // namespace martbounds
