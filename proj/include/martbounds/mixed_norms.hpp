#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "martbounds/gls.hpp"
#include "martbounds/numeric.hpp"

namespace martbounds {

/// Per-index family of moment curves sharing one p-grid.
class MomentTable {
 public:
  explicit MomentTable(std::vector<MomentCurve> curves);

  /// n identical rows.
  static MomentTable constant(const MomentCurve& curve, std::size_t n);

  std::size_t horizon() const { return curves_.size(); }
  const MomentCurve& curve(std::size_t i) const { return curves_.at(i); }
  const std::vector<double>& p_grid() const { return curves_.front().p(); }

  void save_csv(std::ostream& os) const;  // header i,p,value
  static MomentTable load_csv(std::istream& is);

 private:
  std::vector<MomentCurve> curves_;
};

/// [n^{-1} sum_{i<=n} m_i^lambda]^{1/lambda} over nonnegative values;
/// lambda = +inf gives the max.
double power_mean(std::span<const double> values, double lambda);

/// Mixed L_p x l_lambda norm over the first n indices. Curve values that are
/// unresolvable at p propagate +inf.
double mixed_norm(const MomentTable& table, double p, double lambda,
                  std::size_t n);

/// sup over the stored horizon of the finite-n mixed norms; a lower bound on
/// the infinite-horizon value.
double mixed_norm_horizon_sup(const MomentTable& table, double p,
                              double lambda);

/// Row-major sample store for one index family with its seed lineage.
struct SampleMatrix {
  std::size_t reps = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string generator;
  std::vector<double> data;  // reps x n

  double at(std::size_t rep, std::size_t i) const { return data[rep * n + i]; }
  void validate() const;

  /// Raw doubles to `path`, JSON sidecar to `path` + ".json".
  void save(const std::string& path) const;
  static SampleMatrix load(const std::string& path);
};

struct EmpiricalCurve {
  MomentCurve curve;
  std::vector<double> halfwidth;  // empty when reps < 100
  double isotonic_adjustment = 0.0;
};

/// (mean |x|^p)^{1/p} per grid point with delta-method half-widths and an
/// isotonic pass to restore Lyapunov monotonicity.
EmpiricalCurve empirical_moment_curve(std::span<const double> samples,
                                      const std::vector<double>& p_grid,
                                      double z = 1.96);

/// Pointwise supremum of a curve family as a grid PsiFunction.
PsiFunction natural_function(std::span<const MomentCurve> curves);

// Exact curve factories used by the bound evaluators and the simulator.
MomentCurve constant_moment_curve(const std::vector<double>& p_grid, double c);
MomentCurve gaussian_moment_curve(const std::vector<double>& p_grid,
                                  double sigma = 1.0);
/// Centered two-point law taking value `a` with probability b/(a+b) and `-b`
/// with probability a/(a+b).
MomentCurve two_point_moment_curve(const std::vector<double>& p_grid, double a,
                                   double b);

/// Exact absolute moment norm (E|N(0,sigma^2)|^q)^{1/q}.
double gaussian_abs_norm(double q, double sigma = 1.0);

}  // namespace martbounds
