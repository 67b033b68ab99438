#include <cmath>
#include <sstream>

#include <doctest.h>

#include "martbounds/gls.hpp"
#include "martbounds/mixed_norms.hpp"
#include "martbounds/rng.hpp"

using namespace martbounds;

namespace {

const double kLn2 = std::log(2.0);

// Closed-form transform of p -> p log sqrt(p) for the subgaussian psi.
double yf_closed_form(double y) {
  const double split = 0.5 * (1.0 + kLn2);
  if (y >= split) return std::exp(2.0 * y - 1.0) / 2.0;
  return 2.0 * y - kLn2;
}

std::vector<double> coarse_grid() {
  return {2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0, 24.0, 32.0, 48.0, 64.0};
}

}  // namespace

TEST_CASE("psi function kinds evaluate on their supports") {
  const PsiFunction pr = PsiFunction::psi_r(4.0);
  CHECK(pr(4.0) == 1.0);
  CHECK(pr(4.0000001) == kInf);
  CHECK(pr(2.0) == kInf);

  const PsiFunction ps = PsiFunction::psi_sub2();
  CHECK(ps(9.0) == doctest::Approx(3.0));
  CHECK(ps(1.5) == kInf);

  const PsiFunction bounded = PsiFunction::psi_sub2(10.0);
  CHECK(bounded(9.0) == doctest::Approx(3.0));
  CHECK(bounded(10.0) == kInf);

  const PsiFunction g = PsiFunction::grid({2.0, 4.0, 8.0}, {1.0, 2.0, 4.0});
  CHECK(g(2.0) == doctest::Approx(1.0));
  CHECK(g(8.0) == doctest::Approx(4.0));
  // log-log interpolation is exact on the power law p/2.
  CHECK(g(static_cast<double>(std::sqrt(8.0))) ==
        doctest::Approx(std::sqrt(8.0) / 2.0).epsilon(1e-12));
  CHECK(g(9.0) == kInf);
  CHECK(g(1.0) == kInf);

  CHECK_THROWS_AS(PsiFunction::grid({2.0, 4.0}, {1.0, -1.0}), DomainError);
  CHECK_THROWS_AS(PsiFunction::grid({4.0, 2.0}, {1.0, 1.0}), DomainError);
}

TEST_CASE("psi function json round trip") {
  const PsiFunction g =
      PsiFunction::grid({2.0, 4.0, 8.0}, {1.5, 2.5, 4.5}, 16.0);
  const PsiFunction back = PsiFunction::from_json(g.to_json());
  CHECK(back.kind() == PsiKind::Grid);
  CHECK(back(4.0) == doctest::Approx(2.5));
  CHECK(back.support_upper() == doctest::Approx(16.0));

  const PsiFunction ps = PsiFunction::from_json(
      PsiFunction::psi_sub2().to_json());
  CHECK(ps.kind() == PsiKind::PsiSub2);
  CHECK(ps.support_upper() == kInf);

  const PsiFunction pr = PsiFunction::from_json(PsiFunction::psi_r(3.0).to_json());
  CHECK(pr.r() == 3.0);
}

TEST_CASE("moment curve validation and evaluation") {
  CHECK_THROWS_AS(MomentCurve({2.0, 4.0}, {2.0, 1.0}), DomainError);
  CHECK_THROWS_AS(MomentCurve({2.0, 4.0}, {1.0, kInf}), DomainError);

  const MomentCurve c({2.0, 4.0, 8.0}, {1.0, 2.0, 4.0}, 4.0);
  CHECK(c.at(4.0) == doctest::Approx(2.0));
  CHECK(c.at(100.0) == 4.0);       // ess-sup extension
  CHECK(c.at_inf() == 4.0);
  const MomentCurve open({2.0, 4.0}, {1.0, 2.0});
  CHECK(open.at(8.0) == kInf);
  CHECK(open.at_inf() == kInf);

  std::ostringstream os;
  c.save_csv(os);
  std::istringstream is(os.str());
  const MomentCurve back = MomentCurve::load_csv(is);
  CHECK(back.p() == c.p());
  CHECK(back.value() == c.value());
}

TEST_CASE("gls norm identities") {
  const std::vector<double> grid = coarse_grid();
  std::vector<double> sqrtp(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) sqrtp[i] = std::sqrt(grid[i]);
  CHECK(gls_norm(MomentCurve(grid, sqrtp), PsiFunction::psi_sub2()) ==
        doctest::Approx(1.0).epsilon(1e-12));

  CHECK(gls_norm(constant_moment_curve(grid, 1.0), PsiFunction::psi_r(4.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // psi_r reduction is the curve value itself.
  const MomentCurve g64 = gaussian_moment_curve(grid);
  CHECK(gls_norm(g64, PsiFunction::psi_r(8.0)) ==
        doctest::Approx(g64.at(8.0)).epsilon(1e-12));

  CHECK_THROWS_AS(
      gls_norm(MomentCurve({2.0, 3.0}, {1.0, 1.0}), PsiFunction::psi_r(64.0)),
      DomainError);
}

TEST_CASE("gls norm of the exact gaussian moment curve") {
  // Oracle: absolute moments via the Gamma function, sup over the grid.
  const std::vector<double> grid = log_spaced(2.0, 64.0, 64);
  const MomentCurve curve = gaussian_moment_curve(grid);
  double oracle = 0.0;
  for (double p : grid) {
    const double moment =
        std::exp(0.5 * p * kLn2 + std::lgamma(0.5 * (p + 1.0)) -
                 0.5 * std::log(std::acos(-1.0)));
    oracle = std::max(oracle, std::pow(moment, 1.0 / p) / std::sqrt(p));
  }
  const double value = gls_norm(curve, PsiFunction::psi_sub2());
  CHECK(value == doctest::Approx(oracle).epsilon(1e-12));
  // The ratio peaks at p = 2 where it equals 1/sqrt(2).
  CHECK(value == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
  CHECK(std::isfinite(value));
}

TEST_CASE("young-fenchel transform of the subgaussian psi") {
  const PsiFunction ps = PsiFunction::psi_sub2();
  CHECK(young_fenchel_upper(ps, 1.0) ==
        doctest::Approx(std::exp(1.0) / 2.0).epsilon(1e-9));
  CHECK(young_fenchel_upper(ps, 0.5) ==
        doctest::Approx(1.0 - kLn2).epsilon(1e-9));

  // Flat psi == 1: the objective is x*y, so y = 0 gives 0.
  const std::vector<double> xs = log_spaced(2.0, kSearchCap, 128);
  const PsiFunction flat =
      PsiFunction::grid(xs, std::vector<double>(xs.size(), 1.0));
  CHECK(young_fenchel_upper(flat, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
  // ... and any positive y runs away to the cap.
  CHECK(young_fenchel_upper(flat, 0.5) == kInf);

  for (double y = 0.2; y <= 5.0; y += 0.1)
    CHECK(young_fenchel_upper(ps, y) ==
          doctest::Approx(yf_closed_form(y)).epsilon(1e-6));
}

TEST_CASE("tail bound values and monotonicity") {
  const PsiFunction ps = PsiFunction::psi_sub2();
  const double u = std::exp(2.0);
  const double expected = 2.0 * std::exp(-std::exp(3.0) / 2.0);  // 8.6998e-5
  CHECK(tail_bound(ps, 1.0, u) == doctest::Approx(expected).epsilon(1e-8));

  CHECK(tail_bound(ps, 1.0, 1e-12) == 1.0);
  CHECK_THROWS_AS(tail_bound(ps, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(tail_bound(ps, 0.0, 1.0), DomainError);

  double prev = 2.0;
  for (double uu = 0.25; uu <= 32.0; uu *= 1.3) {
    const double t = tail_bound(ps, 1.0, uu);
    CHECK(t > 0.0);
    CHECK(t <= 1.0);
    CHECK(t <= prev + 1e-12);
    prev = t;
  }
}

TEST_CASE("tail bound dominates the monte carlo gaussian tail") {
  const MomentCurve curve = gaussian_moment_curve(log_spaced(2.0, 64.0, 64));
  const double norm = gls_norm(curve, PsiFunction::psi_sub2());
  const std::size_t reps = 1000000;
  std::vector<std::size_t> exceed(3, 0);
  const double thresholds[3] = {2.0, 3.0, 4.0};
  for (std::size_t r = 0; r < reps; ++r) {
    const double z = std::fabs(rng::gaussian(99, rng::kGeneric, r, 0));
    for (int j = 0; j < 3; ++j)
      if (z > thresholds[j]) ++exceed[j];
  }
  for (int j = 0; j < 3; ++j) {
    const double empirical =
        static_cast<double>(exceed[j]) / static_cast<double>(reps);
    CHECK(tail_bound(PsiFunction::psi_sub2(), norm, thresholds[j]) >=
          empirical);
  }
}

TEST_CASE("psi lower transform closed forms") {
  const PsiFunction ps = PsiFunction::psi_sub2();
  CHECK(psi_lower_transform(ps, 2.0) ==
        doctest::Approx(0.5 + 0.5 * std::log(4.0)).epsilon(1e-6));
  CHECK(psi_lower_transform(ps, 8.0) ==
        doctest::Approx(0.5 + 0.5 * std::log(16.0)).epsilon(1e-6));
  for (double x = 1.0; x <= 20.0; x += 0.5)
    CHECK(psi_lower_transform(ps, x) ==
          doctest::Approx(0.5 + 0.5 * std::log(2.0 * x)).epsilon(1e-6));

  // Flat psi == 1 on [2, 1e4]: the infimum sits at the smallest grid y.
  const std::vector<double> xs = log_spaced(2.0, 1e4, 256);
  const PsiFunction flat =
      PsiFunction::grid(xs, std::vector<double>(xs.size(), 1.0));
  const double v = psi_lower_transform(flat, 1.0);
  CHECK(v >= 0.0);
  CHECK(v <= 1.0 / 1e4 + 1e-12);

  // psi_r reduction: x / r.
  CHECK(psi_lower_transform(PsiFunction::psi_r(4.0), 3.0) ==
        doctest::Approx(0.75).epsilon(1e-12));
}
