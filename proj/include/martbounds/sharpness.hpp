#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "martbounds/numeric.hpp"

namespace martbounds {

/// (1/e) / sqrt(20 ln^2(2)/9 + 1/3).
double constant_c();

/// Riemann zeta for p > 1, certified to ~1e-13 absolute (direct sum plus
/// integral tail with Euler-Maclaurin corrections).
double riemann_zeta(double p);

struct SNorm {
  double exact = 0.0;           // [int_0^1 ||ln x| - 1|^p dx]^{1/p}
  double gamma_surrogate = 0.0; // Gamma(p+1)^{1/p}
};

SNorm s_infinity_norm(double p);

/// Conditional averages of f(x) = |ln x| - 1 over the dyadic refinement with
/// 2^{mp} cells at level m. Cell values come from the closed-form primitive
/// F(x) = x |ln x|, so stored levels are exact.
class DyadicMartingale {
 public:
  static constexpr std::uint64_t kDefaultBudget = 1ull << 24;

  static DyadicMartingale build(int p, int levels,
                                std::uint64_t budget = kDefaultBudget);

  int p() const { return p_; }
  int levels() const { return levels_; }
  std::uint64_t cells(int m) const { return 1ull << (static_cast<unsigned>(m) * p_); }
  const std::vector<double>& level(int m) const { return values_.at(m); }

  /// Exact cell average without building the level (used by the simulator).
  static double cell_value(int p, int m, std::uint64_t k);

  /// [sum_cells 2^{-mp} |v|^q]^{1/q} of a stored level.
  double level_norm(int m, double q) const;

  /// Largest |parent - mean(children)| / max(1, |parent|) over stored levels.
  double tower_max_deviation() const;

 private:
  int p_ = 2;
  int levels_ = 0;
  std::vector<std::vector<double>> values_;
};

struct LevelNorm {
  double value = 0.0;
  bool exact = false;  // false when the analytic tail bound was used
};

/// |S(m+1) - S(m)|_p: exact per-cell sum for stored levels, otherwise the
/// certified bound 2^{-m} (|S(1)|_p^p + zeta(p))^{1/p}.
LevelNorm xi_level_norm(const DyadicMartingale& mart, int m);

struct SeriesBound {
  double prefix = 0.0;      // sum_{m=1}^{M-1} |xi(m)|_p^2, exact
  double tail_bound = 0.0;  // upper bound on the remainder from level M on
  int exact_levels = 0;
};

SeriesBound series_prefix_and_tail(const DyadicMartingale& mart);

/// (1/e) / sqrt(20 ln^2(2)/9 + zeta(p)^{2/p}/3); tends to constant_c().
double limit_formula(double p);

struct SharpnessRatio {
  int p = 2;
  int levels = 0;
  double numerator = 0.0;    // |S(inf)|_p, exact integral
  double denominator = 0.0;  // (p-1) sqrt(prefix + tail bound)
  double ratio = 0.0;        // certified lower bound on the truncated ratio
  double limit = 0.0;        // limit_formula(p)
  double series_prefix = 0.0;
  double series_tail_bound = 0.0;
};

SharpnessRatio lower_bound_ratio(
    int p, int levels,
    std::uint64_t budget = DyadicMartingale::kDefaultBudget);

/// CSV with header p,M,numerator,denominator,ratio,limit_formula,
/// series_prefix,series_tail_bound.
void save_sharpness_csv(std::ostream& os,
                        const std::vector<SharpnessRatio>& rows);

}  // namespace martbounds
