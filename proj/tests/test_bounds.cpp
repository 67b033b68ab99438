#include <cmath>

#include <doctest.h>

#include "martbounds/bounds.hpp"
#include "martbounds/rng.hpp"

using namespace martbounds;

namespace {

std::vector<double> wide_grid() {
  return {2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0, 24.0, 32.0, 48.0, 64.0, 128.0};
}

MomentCurve random_curve(std::uint64_t seed, std::uint64_t idx) {
  const std::vector<double> grid = wide_grid();
  std::vector<double> v(grid.size());
  double acc = 0.2 + rng::uniform(seed, rng::kGeneric, idx, 0);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    acc += 0.5 * rng::uniform(seed, rng::kGeneric, idx, j + 1);
    v[j] = acc;
  }
  return MomentCurve(grid, std::move(v));
}

}  // namespace

TEST_CASE("holder quadruple conjugacy") {
  const HolderQuadruple q = HolderQuadruple::from_inverses(0.25, 0.75);
  CHECK(q.alpha == doctest::Approx(4.0));
  CHECK(q.beta == doctest::Approx(4.0 / 3.0));
  CHECK(q.lambda == doctest::Approx(4.0 / 3.0));
  CHECK(q.mu == doctest::Approx(4.0));
  q.validate();

  const HolderQuadruple corner = HolderQuadruple::from_inverses(0.0, 0.0);
  CHECK(corner.alpha == kInf);
  CHECK(corner.beta == doctest::Approx(1.0));
  corner.validate();

  HolderQuadruple bad;
  bad.alpha = 2.0;
  bad.beta = 3.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("martingale moment bound") {
  const MomentTable ones =
      MomentTable::constant(constant_moment_curve(wide_grid(), 1.0), 16);
  CHECK(bound_martingale(ones, 3.0, 16) == doctest::Approx(2.0));
  CHECK(bound_martingale(ones, 2.0, 16) ==
        doctest::Approx(mixed_norm(ones, 2.0, 2.0, 16)));

  const MomentTable gauss =
      MomentTable::constant(gaussian_moment_curve(wide_grid()), 8);
  CHECK(bound_martingale(gauss, 4.0, 8) ==
        doctest::Approx(3.0 * std::pow(3.0, 0.25)).epsilon(1e-12));

  CHECK_THROWS_AS(bound_martingale(ones, 1.5, 16), DomainError);

  const std::vector<double> pnorms = {1.0, 2.0, 2.0};
  // (p-1) sqrt((1 + 4 + 4)/3)
  CHECK(bound_martingale(pnorms, 3.0) ==
        doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("transform bound reductions") {
  const std::vector<double> grid = wide_grid();
  const std::size_t n = 8;
  const MomentTable v2 =
      MomentTable::constant(constant_moment_curve(grid, 2.0), n);
  const MomentTable ones =
      MomentTable::constant(constant_moment_curve(grid, 1.0), n);
  const MomentTable gauss =
      MomentTable::constant(gaussian_moment_curve(grid), n);

  const HolderQuadruple bounded = HolderQuadruple::from_inverses(0.0, 0.0);
  for (double p : {2.0, 3.0, 4.0, 8.0}) {
    // Bounded multipliers: (p-1) V [n^{-1} sum |xi|_p^2]^{1/2}.
    CHECK(bound_transform(v2, gauss, p, n, bounded) ==
          doctest::Approx(2.0 * bound_martingale(gauss, p, n)).epsilon(1e-12));
    // Unit multipliers reduce to the martingale bound exactly.
    CHECK(bound_transform(ones, gauss, p, n, bounded) ==
          doctest::Approx(bound_martingale(gauss, p, n)).epsilon(1e-12));
  }

  // The symmetric quadruple (2,2,2,2) gives fourth-power means at 2p.
  const HolderQuadruple sym = HolderQuadruple::from_inverses(0.5, 0.5);
  const double p = 4.0;
  const double lhs = bound_transform(v2, gauss, p, n, sym);
  const double b_part = std::pow(16.0, 0.25);  // [n^{-1} sum 2^4]^{1/4}
  const double xi_part = gauss.curve(0).at(2.0 * p);
  CHECK(lhs == doctest::Approx((p - 1.0) * b_part * xi_part).epsilon(1e-12));

  HolderQuadruple bad;
  bad.alpha = 2.0;
  bad.beta = 3.0;
  CHECK_THROWS_AS(bound_transform(v2, gauss, 4.0, n, bad), DomainError);
}

TEST_CASE("quadruple optimization") {
  const std::vector<double> grid = wide_grid();
  const std::size_t n = 8;

  SUBCASE("constant multipliers tie the bounded-multiplier form") {
    const MomentTable v2 =
        MomentTable::constant(constant_moment_curve(grid, 2.0), n);
    const MomentTable gauss =
        MomentTable::constant(gaussian_moment_curve(grid), n);
    for (double p : {2.0, 3.0, 6.0}) {
      const OptimizeResult r = optimize_quadruple(v2, gauss, p, n);
      const double eq_bounded = bound_transform(
          v2, gauss, p, n, HolderQuadruple::from_inverses(0.0, 0.0));
      CHECK(r.value <= eq_bounded * (1.0 + 1e-9));
      CHECK(r.value >= eq_bounded * (1.0 - 1e-9));
      CHECK(r.quad.inv_alpha() == doctest::Approx(0.0));
    }
  }

  SUBCASE("symmetric inputs sit at the symmetric exponent") {
    const MomentTable gauss =
        MomentTable::constant(gaussian_moment_curve(grid), n);
    const OptimizeResult r = optimize_quadruple(gauss, gauss, 4.0, n);
    CHECK(std::fabs(r.quad.inv_alpha() - 0.5) <= 1.0 / 32.0 + 1e-9);
    const double center = bound_transform(
        gauss, gauss, 4.0, n, HolderQuadruple::from_inverses(0.5, 0.5));
    CHECK(r.value <= center * (1.0 + 1e-12));
    CHECK(r.excluded > 0);  // unbounded curves rule out the corner cells
  }

  SUBCASE("never beaten by random admissible probes") {
    std::vector<MomentCurve> bc, xc;
    for (std::uint64_t i = 0; i < n; ++i) {
      bc.push_back(random_curve(41, i));
      xc.push_back(random_curve(43, i));
    }
    const MomentTable bt(bc), xt(xc);
    const double p = 3.0;
    const OptimizeResult r = optimize_quadruple(bt, xt, p, n);
    for (std::uint64_t k = 0; k < 1000; ++k) {
      const double u = rng::uniform(77, rng::kGeneric, k, 0);
      const double v = rng::uniform(77, rng::kGeneric, k, 1);
      const double probe =
          bound_transform(bt, xt, p, n, HolderQuadruple::from_inverses(u, v));
      if (probe == kInf) continue;
      CHECK(r.value <= probe + 1e-12 * probe);
    }
  }

  SUBCASE("no admissible quadruple raises a domain error") {
    // Curves supported only on [2, 3] cannot resolve alpha*p at p = 4.
    const std::vector<double> tiny = {2.0, 3.0};
    const MomentTable short_table =
        MomentTable::constant(MomentCurve(tiny, {1.0, 1.1}), 4);
    CHECK_THROWS_AS(optimize_quadruple(short_table, short_table, 4.0, 4),
                    DomainError);
  }
}

TEST_CASE("uniform conditional moment bound") {
  CHECK(bound_conditional_uniform(1.0, 2.0) == doctest::Approx(2.0));
  CHECK(bound_conditional_uniform(0.0, 7.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(bound_conditional_uniform(kInf, 2.0), DomainError);
  CHECK_THROWS_AS(bound_conditional_uniform(1.0, 1.5), DomainError);
}

TEST_CASE("theta function") {
  const std::vector<double> grid = wide_grid();
  const std::size_t n = 8;
  const std::vector<double> theta_grid = log_spaced(2.0, 16.0, 24);

  SUBCASE("unit inputs give p - 1") {
    const MomentTable ones =
        MomentTable::constant(constant_moment_curve(grid, 1.0), n);
    const PsiFunction theta = theta_function(ones, ones, n, theta_grid);
    for (double p : theta_grid)
      CHECK(theta(p) == doctest::Approx(p - 1.0).epsilon(1e-9));
  }

  SUBCASE("gaussian inputs grow at most like p^2") {
    const MomentTable gauss =
        MomentTable::constant(gaussian_moment_curve(grid), n);
    const PsiFunction theta = theta_function(gauss, gauss, n, theta_grid);
    // Log-log slope of the upper envelope.
    double max_slope = 0.0;
    double prev = theta(theta_grid.front());
    for (std::size_t j = 1; j < theta_grid.size(); ++j) {
      const double cur = theta(theta_grid[j]);
      max_slope = std::max(max_slope,
                           std::log(cur / prev) /
                               std::log(theta_grid[j] / theta_grid[j - 1]));
      CHECK(cur >= prev * (1.0 - 1e-6));  // nondecreasing
      prev = cur;
    }
    CHECK(max_slope <= 2.1);
  }

  SUBCASE("everywhere-infinite theta is flagged") {
    const std::vector<double> tiny = {2.0, 2.5};
    const MomentTable short_table =
        MomentTable::constant(MomentCurve(tiny, {1.0, 1.1}), 4);
    CHECK_THROWS_AS(
        theta_function(short_table, short_table, 4, log_spaced(4.0, 16.0, 8)),
        DomainError);
  }
}

TEST_CASE("quadratic characteristic bound") {
  const std::vector<double> grid = wide_grid();
  const MomentTable unit_cond =
      MomentTable::constant(constant_moment_curve(grid, 1.0), 4);
  const double p = std::exp(1.0);
  CHECK(bound_quadratic_characteristic(unit_cond, p, 1.0) ==
        doctest::Approx(2.0 * std::exp(1.0)).epsilon(1e-12));

  // Rademacher conditional squares are 1, so <f> = sqrt(n).
  const MomentTable rad_cond =
      MomentTable::constant(constant_moment_curve(grid, 1.0), 9);
  CHECK(bound_quadratic_characteristic(rad_cond, 4.0, 1.0) ==
        doctest::Approx((4.0 / std::log(4.0)) * 3.0).epsilon(1e-12));

  // The c3 bracket is exactly the ratio to (p / log p) <f>.
  for (std::uint64_t k = 0; k < 8; ++k) {
    std::vector<MomentCurve> curves;
    for (std::uint64_t i = 0; i < 5; ++i)
      curves.push_back(random_curve(51 + k, i));
    const MomentTable cond(curves);
    const double c3 = 0.5 + rng::uniform(53, rng::kGeneric, k, 0);
    double quad = 0.0;
    for (std::size_t i = 0; i < 5; ++i) quad += cond.curve(i).at(3.0);
    quad = std::sqrt(quad);
    const double b = bound_quadratic_characteristic(cond, 3.0, c3);
    CHECK(b / ((3.0 / std::log(3.0)) * quad) ==
          doctest::Approx(c3).epsilon(1e-12));
  }

  CHECK_THROWS_AS(bound_quadratic_characteristic(unit_cond, 1.0, 1.0),
                  DomainError);
  CHECK_THROWS_AS(bound_quadratic_characteristic(unit_cond, 1.5, 1.0),
                  DomainError);
}

TEST_CASE("two-sided growth bracket") {
  const MpBracket at_e = mp_bracket(std::exp(1.0));
  CHECK(at_e.lower == doctest::Approx(0.87 * std::exp(1.0)).epsilon(1e-12));
  CHECK(at_e.upper == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
  CHECK_FALSE(at_e.ordered);  // the bracket inverts at small p

  const MpBracket at_10 = mp_bracket(10.0);
  CHECK(at_10.lower == doctest::Approx(8.7 / std::log(10.0)).epsilon(1e-12));
  CHECK(at_10.upper == doctest::Approx(9.0));
  CHECK(at_10.ordered);

  const MpBracket at_100 = mp_bracket(100.0);
  CHECK(at_100.lower == doctest::Approx(87.0 / std::log(100.0)).epsilon(1e-12));
  CHECK(at_100.lower == doctest::Approx(18.8918).epsilon(1e-4));
  CHECK(at_100.upper == doctest::Approx(99.0));
  CHECK(at_100.ordered);
}

TEST_CASE("verdicts and report serialization") {
  CHECK(adjudicate_value(1.0, 0.1, 2.0) == Verdict::Holds);
  CHECK(adjudicate_value(2.5, 0.1, 2.0) == Verdict::Violated);
  CHECK(adjudicate_value(2.2, 0.1, 2.0) == Verdict::Holds);  // inside 3 hw
  CHECK(adjudicate_value(kInf, 0.1, 2.0) == Verdict::Inconclusive);

  BoundReport r;
  r.name = "martingale";
  r.bound = 2.0;
  r.empirical = 1.1;
  r.halfwidth = 0.01;
  r.verdict = Verdict::Holds;
  r.p = 3.0;
  r.n = 64;
  r.generator = "rademacher";
  r.seed = 7;
  r.quadruple = HolderQuadruple::from_inverses(0.25, 0.5);
  const BoundReport back = BoundReport::from_json(r.to_json());
  CHECK(back.bound == r.bound);
  CHECK(back.empirical == r.empirical);
  CHECK(back.verdict == Verdict::Holds);
  CHECK(back.n == 64);
  CHECK(back.quadruple->alpha == doctest::Approx(4.0));
}
