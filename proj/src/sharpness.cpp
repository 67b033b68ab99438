#include "martbounds/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace martbounds {

namespace {

constexpr double kLn2 = 0.6931471805599453;

}  // namespace

double constant_c() {
  return (1.0 / std::exp(1.0)) /
         std::sqrt(20.0 * kLn2 * kLn2 / 9.0 + 1.0 / 3.0);
}

double riemann_zeta(double p) {
  if (!(p > 1.0 + 1e-6))
    throw DomainError("riemann_zeta: requires p > 1 + 1e-6");
  // Direct sum to K, then the integral tail with two Euler-Maclaurin
  // correction terms; the first omitted term bounds the error.
  std::uint64_t k_cut = 16;
  while (p * (p + 1.0) * (p + 2.0) / 720.0 *
             std::pow(static_cast<double>(k_cut), -p - 3.0) >
         5e-14) {
    k_cut *= 2;
    if (k_cut > (1ull << 21)) break;
  }
  double sum = 0.0;
  for (std::uint64_t k = k_cut; k >= 1; --k)
    sum += std::pow(static_cast<double>(k), -p);
  const double kk = static_cast<double>(k_cut);
  sum += std::pow(kk, 1.0 - p) / (p - 1.0) - 0.5 * std::pow(kk, -p) +
         (p / 12.0) * std::pow(kk, -p - 1.0);
  return sum;
}

SNorm s_infinity_norm(double p) {
  if (!(p >= 2.0)) throw DomainError("s_infinity_norm: requires p >= 2");
  // int_0^1 ||ln x| - 1|^p dx = (Gamma(p+1) + int_0^1 s^p e^s ds) / e,
  // and the remaining integral expands as sum_k 1/(k! (p+k+1)).
  double series = 0.0;
  double kfact = 1.0;
  for (int k = 0; k <= 48; ++k) {
    if (k > 0) kfact *= k;
    series += 1.0 / (kfact * (p + k + 1.0));
  }
  const double lgamma_p1 = std::lgamma(p + 1.0);
  const double log_integral =
      lgamma_p1 + std::log1p(series * std::exp(-lgamma_p1)) - 1.0;
  SNorm out;
  out.exact = std::exp(log_integral / p);
  out.gamma_surrogate = std::exp(lgamma_p1 / p);
  return out;
}

double DyadicMartingale::cell_value(int p, int m, std::uint64_t k) {
  // 2^{mp} (F((k+1) h) - F(k h)) with h = 2^{-mp} and F(x) = -x ln x,
  // rearranged to avoid cancellation between neighbouring cells.
  const double kd = static_cast<double>(k);
  const double base = static_cast<double>(m) * static_cast<double>(p) * kLn2;
  if (k == 0) return base;
  return base - std::log(kd + 1.0) - kd * std::log1p(1.0 / kd);
}

DyadicMartingale DyadicMartingale::build(int p, int levels,
                                         std::uint64_t budget) {
  if (p < 2) throw DomainError("DyadicMartingale: requires integer p >= 2");
  if (levels < 1) throw DomainError("DyadicMartingale: requires levels >= 1");
  const unsigned top_bits = static_cast<unsigned>(levels) * static_cast<unsigned>(p);
  if (top_bits >= 63 || (1ull << top_bits) > budget)
    throw ResourceError(
        "DyadicMartingale: level " + std::to_string(levels) + " needs 2^" +
        std::to_string(top_bits) + " cells, over the budget of " +
        std::to_string(budget) + " cells at the finest stored level");
  DyadicMartingale mart;
  mart.p_ = p;
  mart.levels_ = levels;
  mart.values_.resize(static_cast<std::size_t>(levels) + 1);
  for (int m = 0; m <= levels; ++m) {
    auto& vals = mart.values_[m];
    vals.resize(mart.cells(m));
    for (std::uint64_t k = 0; k < vals.size(); ++k)
      vals[k] = cell_value(p, m, k);
  }
  return mart;
}

double DyadicMartingale::level_norm(int m, double q) const {
  const auto& vals = values_.at(m);
  const double measure = 1.0 / static_cast<double>(cells(m));
  std::vector<double> terms(vals.size());
  for (std::size_t k = 0; k < vals.size(); ++k)
    terms[k] = measure * abspow(vals[k], q);
  return std::pow(pairwise_sum(terms), 1.0 / q);
}

double DyadicMartingale::tower_max_deviation() const {
  double worst = 0.0;
  const std::uint64_t kids = 1ull << static_cast<unsigned>(p_);
  for (int m = 0; m + 1 <= levels_; ++m) {
    const auto& parents = values_[m];
    const auto& children = values_[m + 1];
    for (std::uint64_t k = 0; k < parents.size(); ++k) {
      std::vector<double> block(children.begin() + k * kids,
                                children.begin() + (k + 1) * kids);
      const double mean = pairwise_sum(block) / static_cast<double>(kids);
      worst = std::max(worst, std::fabs(mean - parents[k]) /
                                  std::max(1.0, std::fabs(parents[k])));
    }
  }
  return worst;
}

LevelNorm xi_level_norm(const DyadicMartingale& mart, int m) {
  if (m < 0) throw DomainError("xi_level_norm: level must be >= 0");
  const double p = static_cast<double>(mart.p());
  if (m + 1 <= mart.levels()) {
    const auto& lo = mart.level(m);
    const auto& hi = mart.level(m + 1);
    const std::uint64_t shift = static_cast<unsigned>(mart.p());
    const double measure = 1.0 / static_cast<double>(hi.size());
    std::vector<double> terms(hi.size());
    for (std::uint64_t c = 0; c < hi.size(); ++c)
      terms[c] = measure * abspow(hi[c] - lo[c >> shift], p);
    return {std::pow(pairwise_sum(terms), 1.0 / p), true};
  }
  // Past the stored levels: the difference restricted to the singular cell
  // is a rescaled copy of S(1), and the remaining cells contribute at most
  // ln(1 + 1/l) <= 1/l each.
  const double s1p = std::pow(mart.level_norm(1, p), p);
  const double bound = std::pow(s1p + riemann_zeta(p), 1.0 / p);
  return {std::ldexp(bound, -m), false};
}

SeriesBound series_prefix_and_tail(const DyadicMartingale& mart) {
  SeriesBound out;
  std::vector<double> squares;
  for (int m = 1; m + 1 <= mart.levels(); ++m) {
    const LevelNorm ln = xi_level_norm(mart, m);
    squares.push_back(ln.value * ln.value);
    ++out.exact_levels;
  }
  out.prefix = squares.empty() ? 0.0 : pairwise_sum(squares);
  const int m0 = std::max(1, mart.levels());
  const double p = static_cast<double>(mart.p());
  const double s1p = std::pow(mart.level_norm(1, p), p);
  const double per_level = std::pow(s1p + riemann_zeta(p), 2.0 / p);
  out.tail_bound = per_level * std::ldexp(4.0 / 3.0, -2 * m0);
  return out;
}

double limit_formula(double p) {
  const double z = std::pow(riemann_zeta(p), 2.0 / p);
  return (1.0 / std::exp(1.0)) /
         std::sqrt(20.0 * kLn2 * kLn2 / 9.0 + z / 3.0);
}

SharpnessRatio lower_bound_ratio(int p, int levels, std::uint64_t budget) {
  const DyadicMartingale mart = DyadicMartingale::build(p, levels, budget);
  const SeriesBound series = series_prefix_and_tail(mart);
  SharpnessRatio out;
  out.p = p;
  out.levels = levels;
  out.numerator = s_infinity_norm(static_cast<double>(p)).exact;
  out.series_prefix = series.prefix;
  out.series_tail_bound = series.tail_bound;
  out.denominator = (static_cast<double>(p) - 1.0) *
                    std::sqrt(series.prefix + series.tail_bound);
  out.ratio = out.numerator / out.denominator;
  out.limit = limit_formula(static_cast<double>(p));
  return out;
}

void save_sharpness_csv(std::ostream& os,
                        const std::vector<SharpnessRatio>& rows) {
  os << "p,M,numerator,denominator,ratio,limit_formula,series_prefix,"
        "series_tail_bound\n";
  os.precision(17);
  for (const auto& r : rows)
    os << r.p << "," << r.levels << "," << r.numerator << "," << r.denominator
       << "," << r.ratio << "," << r.limit << "," << r.series_prefix << ","
       << r.series_tail_bound << "\n";
}

}  // namespace martbounds
