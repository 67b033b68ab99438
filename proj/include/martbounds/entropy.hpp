#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "martbounds/bounds.hpp"
#include "martbounds/gls.hpp"

namespace martbounds {

/// eps -> H(eps) = log N(V, d, eps) on a decreasing eps-grid.
struct EntropyProfile {
  enum class Provenance { FromPoints, AnalyticModel };

  std::vector<double> eps;  // strictly decreasing
  std::vector<double> h;    // nonnegative, nonincreasing in eps
  Provenance provenance = Provenance::FromPoints;

  void validate() const;
};

/// Two-sided covering estimate: greedy covering above, packing below.
struct EntropyBracket {
  EntropyProfile upper;
  EntropyProfile lower;

  void save_csv(std::ostream& os) const;  // epsilon,H_upper,H_lower
  static EntropyBracket load_csv(std::istream& is);
};

/// Symmetric nonnegative semi-distance over a finite index set.
class DistanceMatrix {
 public:
  DistanceMatrix(std::size_t n, std::vector<double> dense,
                 bool check_triangle = true);

  std::size_t size() const { return n_; }
  double at(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

/// d(v1, v2) = GLS norm of the pairwise difference moment curve. Curves are
/// indexed row-major over pairs i < j.
DistanceMatrix natural_distance(std::size_t n_points,
                                std::span<const MomentCurve> pair_curves,
                                const PsiFunction& psi);

/// Greedy farthest-point covering (upper) and 2eps-separated packing
/// (lower); ties break toward the lowest index.
EntropyBracket covering_entropy(const DistanceMatrix& dmat,
                                const std::vector<double>& eps_grid);

/// sup over the family and the horizons of the martingale bound curve,
/// returned as a grid psi function.
PsiFunction tau_function(std::span<const MomentTable> tables,
                         std::span<const std::size_t> horizons,
                         const std::vector<double>& p_grid);

struct AnalyticEntropyModel {
  enum class Kind { Power, Log, Constant };
  Kind kind = Kind::Constant;
  double scale = 0.0;     // c in c*eps^{-s}, q in q*log(1/eps), or the constant
  double exponent = 0.0;  // s for the power family
  double offset = 0.0;    // additive constant for the log family

  static AnalyticEntropyModel power(double c, double s);
  static AnalyticEntropyModel log_law(double q, double offset = 0.0);
  static AnalyticEntropyModel constant(double h);

  double operator()(double eps) const;
  std::string describe() const;
};

enum class IntegralVerdict { Converges, Diverges, Inconclusive };

std::string to_string(IntegralVerdict v);

struct ConvergenceReport {
  std::string criterion;
  IntegralVerdict verdict = IntegralVerdict::Inconclusive;
  double value = 0.0;  // meaningful when the verdict is Converges
  double error = 0.0;
  std::string model;
  double fit_lo = 0.0, fit_hi = 0.0;  // eps window used for the fit
  double residual = 0.0;

  std::string to_json() const;
};

// Convergence near eps = 0 is decided on the analytic model (given directly
// or fitted to the profile head); a raw grid alone is inconclusive.
ConvergenceReport integral_gls(const PsiFunction& psi,
                               const AnalyticEntropyModel& model);
ConvergenceReport integral_gls(const PsiFunction& psi,
                               const EntropyProfile& profile);
ConvergenceReport integral_pisier(const AnalyticEntropyModel& model, double r);
ConvergenceReport integral_pisier(const EntropyProfile& profile, double r);
ConvergenceReport integral_dudley(const AnalyticEntropyModel& model);
ConvergenceReport integral_dudley(const EntropyProfile& profile);

/// Finite Pisier integral for the Euclidean Holder model: r > d / alpha.
bool holder_condition(int d, double alpha, double r);

}  // namespace martbounds
