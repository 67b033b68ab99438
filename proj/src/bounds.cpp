#include "martbounds/bounds.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace martbounds {

namespace {

double inv_to_exponent(double inv) {
  if (inv < 0.0 || inv > 1.0)
    throw DomainError("HolderQuadruple: inverse exponent outside [0, 1]");
  return inv == 0.0 ? kInf : 1.0 / inv;
}

}  // namespace

HolderQuadruple HolderQuadruple::from_inverses(double inv_alpha,
                                               double inv_lambda) {
  HolderQuadruple q;
  q.alpha = inv_to_exponent(inv_alpha);
  q.beta = inv_to_exponent(1.0 - inv_alpha);
  q.lambda = inv_to_exponent(inv_lambda);
  q.mu = inv_to_exponent(1.0 - inv_lambda);
  return q;
}

void HolderQuadruple::validate() const {
  auto inv = [](double x) {
    if (x == kInf) return 0.0;
    if (!(x >= 1.0)) throw DomainError("HolderQuadruple: exponents must be >= 1");
    return 1.0 / x;
  };
  if (std::fabs(inv(alpha) + inv(beta) - 1.0) > 1e-12 ||
      std::fabs(inv(lambda) + inv(mu) - 1.0) > 1e-12)
    throw DomainError("HolderQuadruple: conjugacy constraints violated");
}

double bound_martingale(std::span<const double> index_pnorms, double p) {
  if (!(p >= 2.0)) throw DomainError("bound_martingale: requires p >= 2");
  if (index_pnorms.empty()) throw DomainError("bound_martingale: empty table");
  return (p - 1.0) * power_mean(index_pnorms, 2.0);
}

double bound_martingale(const MomentTable& table, double p, std::size_t n) {
  if (!(p >= 2.0)) throw DomainError("bound_martingale: requires p >= 2");
  return (p - 1.0) * mixed_norm(table, p, 2.0, n);
}

MomentCurve martingale_bound_curve(const MomentTable& table, std::size_t n,
                                   const std::vector<double>& p_grid) {
  std::vector<double> v(p_grid.size());
  for (std::size_t j = 0; j < p_grid.size(); ++j)
    v[j] = bound_martingale(table, p_grid[j], n);
  return MomentCurve(p_grid, std::move(v));
}

double bound_transform(const MomentTable& b_table, const MomentTable& xi_table,
                       double p, std::size_t n, const HolderQuadruple& quad) {
  if (!(p >= 2.0)) throw DomainError("bound_transform: requires p >= 2");
  quad.validate();
  const double ap = quad.alpha == kInf ? kInf : quad.alpha * p;
  const double bp = quad.beta == kInf ? kInf : quad.beta * p;
  const double lb = quad.lambda == kInf ? kInf : 2.0 * quad.lambda;
  const double mb = quad.mu == kInf ? kInf : 2.0 * quad.mu;
  const double b_part = mixed_norm(b_table, ap, lb, n);
  const double xi_part = mixed_norm(xi_table, bp, mb, n);
  if (b_part == 0.0 || xi_part == 0.0) return 0.0;  // transform vanishes
  return (p - 1.0) * b_part * xi_part;
}

namespace {

double objective(const MomentTable& b, const MomentTable& xi, double p,
                 std::size_t n, double u, double v) {
  return bound_transform(b, xi, p, n, HolderQuadruple::from_inverses(u, v));
}

}  // namespace

OptimizeResult optimize_quadruple(const MomentTable& b_table,
                                  const MomentTable& xi_table, double p,
                                  std::size_t n, std::size_t coarse) {
  if (coarse < 3) throw DomainError("optimize_quadruple: coarse grid too small");
  OptimizeResult res;
  double bu = 0.0, bv = 0.0;
  auto consider = [&](double u, double v) {
    const double f = objective(b_table, xi_table, p, n, u, v);
    ++res.evaluated;
    if (f == kInf) {
      ++res.excluded;
      return;
    }
    // Lexicographic tie-break toward smaller (1/alpha, 1/lambda).
    if (f < res.value ||
        (f == res.value && (u < bu || (u == bu && v < bv)))) {
      res.value = f;
      bu = u;
      bv = v;
    }
  };
  const double step = 1.0 / static_cast<double>(coarse - 1);
  for (std::size_t i = 0; i < coarse; ++i)
    for (std::size_t j = 0; j < coarse; ++j)
      consider(static_cast<double>(i) * step, static_cast<double>(j) * step);
  if (res.value == kInf)
    throw DomainError(
        "optimize_quadruple: no admissible quadruple on the table grids");
  double h = step;
  for (int round = 0; round < 8; ++round) {
    const double u0 = bu, v0 = bv;
    for (int i = -2; i <= 2; ++i)
      for (int j = -2; j <= 2; ++j) {
        const double u = std::clamp(u0 + i * h / 2.0, 0.0, 1.0);
        const double v = std::clamp(v0 + j * h / 2.0, 0.0, 1.0);
        consider(u, v);
      }
    h /= 4.0;
  }
  res.quad = HolderQuadruple::from_inverses(bu, bv);
  return res;
}

double bound_conditional_uniform(double q_const, double p) {
  if (!std::isfinite(q_const) || q_const < 0.0)
    throw DomainError("bound_conditional_uniform: Q must be finite and >= 0");
  if (!(p >= 2.0))
    throw DomainError("bound_conditional_uniform: requires p >= 2");
  return p * q_const;
}

PsiFunction theta_function(const MomentTable& b_table,
                           const MomentTable& xi_table, std::size_t n,
                           const std::vector<double>& p_grid) {
  std::vector<double> p_ok, v_ok;
  for (double p : p_grid) {
    try {
      const OptimizeResult r = optimize_quadruple(b_table, xi_table, p, n);
      p_ok.push_back(p);
      v_ok.push_back(r.value);
    } catch (const DomainError&) {
      // unresolvable p: drop the grid point
    }
  }
  if (p_ok.size() < 2)
    throw DomainError("theta_function: theta is infinite past p = 2");
  return PsiFunction::grid(std::move(p_ok), std::move(v_ok));
}

double bound_quadratic_characteristic(const MomentTable& cond_table, double p,
                                      double c3) {
  if (!(p >= 2.0))
    throw DomainError("bound_quadratic_characteristic: requires p >= 2");
  if (!(c3 > 0.0) || !std::isfinite(c3))
    throw DomainError("bound_quadratic_characteristic: c3 must be positive");
  std::vector<double> vals(cond_table.horizon());
  for (std::size_t i = 0; i < vals.size(); ++i)
    vals[i] = cond_table.curve(i).at(p);
  const double quad_char = std::sqrt(pairwise_sum(vals));
  return c3 * (p / std::log(p)) * quad_char;
}

MpBracket mp_bracket(double p) {
  if (!(p >= 2.0)) throw DomainError("mp_bracket: requires p >= 2");
  MpBracket b;
  b.lower = 0.87 * p / std::log(p);
  b.upper = p - 1.0;
  b.ordered = b.lower <= b.upper;
  return b;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "holds";
    case Verdict::Violated:
      return "violated";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Verdict adjudicate_value(double empirical, double halfwidth, double bound,
                         double threshold) {
  if (!std::isfinite(empirical) || !std::isfinite(halfwidth) ||
      !std::isfinite(bound))
    return Verdict::Inconclusive;
  if (empirical - threshold * halfwidth > bound) return Verdict::Violated;
  return Verdict::Holds;
}

std::string BoundReport::to_json() const {
  nlohmann::json j{{"name", name},
                   {"bound", bound},
                   {"empirical", empirical},
                   {"halfwidth", halfwidth},
                   {"verdict", to_string(verdict)},
                   {"p", p},
                   {"n", n},
                   {"generator", generator},
                   {"seed", seed}};
  if (quadruple) {
    j["quadruple"] = {{"inv_alpha", quadruple->inv_alpha()},
                      {"inv_lambda", quadruple->inv_lambda()}};
  }
  return j.dump();
}

BoundReport BoundReport::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  BoundReport r;
  r.name = j.value("name", "");
  r.bound = j.at("bound").get<double>();
  r.empirical = j.at("empirical").get<double>();
  r.halfwidth = j.at("halfwidth").get<double>();
  const std::string v = j.at("verdict").get<std::string>();
  r.verdict = v == "holds"      ? Verdict::Holds
              : v == "violated" ? Verdict::Violated
                                : Verdict::Inconclusive;
  r.p = j.at("p").get<double>();
  r.n = j.at("n").get<std::size_t>();
  r.generator = j.value("generator", "");
  r.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("quadruple"))
    r.quadruple = HolderQuadruple::from_inverses(
        j["quadruple"].at("inv_alpha").get<double>(),
        j["quadruple"].at("inv_lambda").get<double>());
  return r;
}

}  // namespace martbounds
