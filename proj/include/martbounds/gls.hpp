#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "martbounds/numeric.hpp"

namespace martbounds {

enum class PsiKind { Grid, PsiR, PsiSub2 };

/// Moment generating function p -> psi(p) on a semi-open support [2, a).
/// Grid kind interpolates linearly in (log p, log psi); evaluation outside
/// the support returns +inf, and ratios against +inf count as zero.
class PsiFunction {
 public:
  static PsiFunction grid(std::vector<double> p, std::vector<double> value,
                          double a = kInf);
  static PsiFunction psi_r(double r);
  static PsiFunction psi_sub2(double a = kInf);

  /// psi(p); +inf outside the support.
  double operator()(double p) const;

  PsiKind kind() const { return kind_; }
  double support_upper() const { return a_; }
  double r() const { return r_; }
  /// Largest finite evaluation point (search cap for transforms).
  double search_upper() const;
  /// Smallest finite evaluation point.
  double search_lower() const;
  const std::vector<double>& grid_p() const { return p_; }
  const std::vector<double>& grid_value() const { return v_; }

  std::string to_json() const;
  static PsiFunction from_json(const std::string& text);

 private:
  PsiFunction() = default;
  PsiKind kind_ = PsiKind::Grid;
  double a_ = kInf;
  double r_ = 0.0;
  std::vector<double> p_, v_;
};

/// A p -> |eta|_p curve on a finite grid. Values are nonnegative, finite and
/// nondecreasing in p (Lyapunov); an optional essential-sup value extends
/// evaluation past the grid.
class MomentCurve {
 public:
  MomentCurve(std::vector<double> p, std::vector<double> value,
              std::optional<double> sup = std::nullopt);

  /// Interpolated value inside the grid span. Beyond the top the ess-sup is
  /// used when available (a valid upper bound); otherwise +inf.
  double at(double q) const;
  /// Value at p = infinity: the ess-sup when known, else +inf.
  double at_inf() const;

  const std::vector<double>& p() const { return p_; }
  const std::vector<double>& value() const { return v_; }
  std::optional<double> sup_value() const { return sup_; }

  std::size_t size() const { return p_.size(); }
  double front_p() const { return p_.front(); }
  double back_p() const { return p_.back(); }

  void save_csv(std::ostream& os) const;
  static MomentCurve load_csv(std::istream& is);

 private:
  std::vector<double> p_, v_;
  std::optional<double> sup_;
};

/// Default moment grid: 64 log-spaced points on [2, 64].
std::vector<double> default_p_grid();

/// sup over the curve grid of m(p)/psi(p). Disjoint supports raise
/// DomainError; an unbounded ratio comes back as +inf.
double gls_norm(const MomentCurve& curve, const PsiFunction& psi);

/// sup_{x >= 2} (x y - x log psi(x)). Returns +inf when the objective is
/// still increasing at the search cap.
double young_fenchel_upper(const PsiFunction& psi, double y);

/// min(1, 2 exp(-g(log(u / norm)))) with g the transform above.
double tail_bound(const PsiFunction& psi, double gls_norm_value, double u);

/// inf_{y in (0, 1/2]} (x y + log psi(1/y)); +inf when psi is infinite on the
/// whole admissible range.
double psi_lower_transform(const PsiFunction& psi, double x);

}  // namespace martbounds
