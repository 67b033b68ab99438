#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "martbounds/mixed_norms.hpp"

namespace martbounds {

/// Conjugate exponent quadruple: 1/alpha + 1/beta = 1 and
/// 1/lambda + 1/mu = 1, with 1/inf = 0.
struct HolderQuadruple {
  double alpha = 2.0;
  double beta = 2.0;
  double lambda = 2.0;
  double mu = 2.0;

  static HolderQuadruple from_inverses(double inv_alpha, double inv_lambda);
  void validate() const;
  double inv_alpha() const { return alpha == kInf ? 0.0 : 1.0 / alpha; }
  double inv_lambda() const { return lambda == kInf ? 0.0 : 1.0 / lambda; }
};

/// (p-1) [n^{-1} sum_{i<=n} m_i(p)^2]^{1/2} from per-index p-norms.
double bound_martingale(std::span<const double> index_pnorms, double p);
double bound_martingale(const MomentTable& table, double p, std::size_t n);

/// The bound above as a curve over a p-grid (tau building block).
MomentCurve martingale_bound_curve(const MomentTable& table, std::size_t n,
                                   const std::vector<double>& p_grid);

/// (p-1) |b|_{alpha p, 2 lambda} |xi|_{beta p, 2 mu}.
double bound_transform(const MomentTable& b_table, const MomentTable& xi_table,
                       double p, std::size_t n, const HolderQuadruple& quad);

struct OptimizeResult {
  HolderQuadruple quad;
  double value = kInf;
  std::size_t evaluated = 0;
  std::size_t excluded = 0;  // grid cells unresolvable on the tables
};

/// Minimizes the transform bound over admissible quadruples, parameterized by
/// (1/alpha, 1/lambda) on [0,1]^2: coarse 33x33 grid, then local refinement.
/// Ties break toward smaller (1/alpha, 1/lambda).
OptimizeResult optimize_quadruple(const MomentTable& b_table,
                                  const MomentTable& xi_table, double p,
                                  std::size_t n, std::size_t coarse = 33);

/// p * Q for uniformly bounded conditional p-th moments.
double bound_conditional_uniform(double q_const, double p);

/// Grid function p -> optimized transform bound; DomainError when infinite at
/// every grid point past 2.
PsiFunction theta_function(const MomentTable& b_table,
                           const MomentTable& xi_table, std::size_t n,
                           const std::vector<double>& p_grid);

/// c3 * (p / log p) * [sum_i |E(xi^2(i)|F(i-1))|_p]^{1/2}.
double bound_quadratic_characteristic(const MomentTable& cond_table, double p,
                                      double c3);

struct MpBracket {
  double lower = 0.0;  // 0.87 p / log p
  double upper = 0.0;  // p - 1
  bool ordered = false;
};

MpBracket mp_bracket(double p);

enum class Verdict { Holds, Violated, Inconclusive };

std::string to_string(Verdict v);

/// A theoretical bound paired with the Monte Carlo statistic it must beat.
struct BoundReport {
  std::string name;
  double bound = 0.0;
  double empirical = 0.0;
  double halfwidth = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  double p = 0.0;
  std::size_t n = 0;
  std::string generator;
  std::uint64_t seed = 0;
  std::optional<HolderQuadruple> quadruple;

  std::string to_json() const;
  static BoundReport from_json(const std::string& text);
};

/// Holds unless the statistic exceeds the bound by more than
/// `threshold` half-widths; non-finite inputs are inconclusive.
Verdict adjudicate_value(double empirical, double halfwidth, double bound,
                         double threshold = 3.0);

}  // namespace martbounds
