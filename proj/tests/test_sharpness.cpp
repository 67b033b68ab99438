#include <cmath>
#include <sstream>

#include <doctest.h>

#include "martbounds/sharpness.hpp"

using namespace martbounds;

namespace {

const double kLn2 = std::log(2.0);

// Independent zeta oracle: plain summation with the integral tail.
double zeta_oracle(double p) {
  const std::size_t K = 2000000;
  double s = 0.0;
  for (std::size_t k = K; k >= 1; --k)
    s += std::pow(static_cast<double>(k), -p);
  return s + std::pow(static_cast<double>(K), 1.0 - p) / (p - 1.0) -
         0.5 * std::pow(static_cast<double>(K), -p);
}

}  // namespace

TEST_CASE("limiting constant") {
  const double denom_sq = 20.0 * kLn2 * kLn2 / 9.0 + 1.0 / 3.0;
  CHECK(denom_sq == doctest::Approx(1.4010067).epsilon(1e-7));
  CHECK(std::fabs(constant_c() - 0.31080315) < 5e-8);
  CHECK(constant_c() < 1.0 / std::exp(1.0));
}

TEST_CASE("riemann zeta") {
  const double pi = std::acos(-1.0);
  CHECK(riemann_zeta(2.0) == doctest::Approx(pi * pi / 6.0).epsilon(1e-13));
  CHECK(riemann_zeta(10.0) == doctest::Approx(1.0009945751278180).epsilon(1e-13));
  CHECK(riemann_zeta(3.0) == doctest::Approx(zeta_oracle(3.0)).epsilon(1e-10));
  CHECK(riemann_zeta(1.5) == doctest::Approx(zeta_oracle(1.5)).epsilon(1e-9));

  CHECK(std::pow(riemann_zeta(50.0), 2.0 / 50.0) - 1.0 < 1e-8);
  double prev = kInf;
  for (double p : {4.0, 8.0, 16.0, 32.0, 50.0}) {
    const double v = std::pow(riemann_zeta(p), 2.0 / p);
    CHECK(v < prev);
    prev = v;
  }

  CHECK_THROWS_AS(riemann_zeta(1.0), DomainError);
  CHECK_THROWS_AS(riemann_zeta(0.5), DomainError);
}

TEST_CASE("norm of the limiting function") {
  // Quadrature oracle for int_0^\infty |t-1|^p e^-t dt after substitution.
  auto oracle = [](double p) {
    const auto f = [p](double t) {
      return std::pow(std::fabs(t - 1.0), p) * std::exp(-t);
    };
    return std::pow(integrate_adaptive(f, 0.0, 80.0, 1e-13), 1.0 / p);
  };
  for (double p : {2.0, 5.0, 9.0})
    CHECK(s_infinity_norm(p).exact == doctest::Approx(oracle(p)).epsilon(1e-9));

  CHECK(s_infinity_norm(5.0).gamma_surrogate ==
        doctest::Approx(std::pow(120.0, 0.2)).epsilon(1e-12));

  // Stirling: the surrogate over p/e approaches 1.
  const double p200 = 200.0;
  const double ratio =
      s_infinity_norm(p200).gamma_surrogate / (p200 / std::exp(1.0));
  CHECK(std::fabs(ratio - 1.0) < 0.02);

  // Triangle inequality: exact norm <= surrogate + 1.
  for (int p = 2; p <= 24; ++p) {
    const SNorm s = s_infinity_norm(static_cast<double>(p));
    CHECK(s.exact <= s.gamma_surrogate + 1.0 + 1e-12);
  }
}

TEST_CASE("dyadic martingale construction") {
  const DyadicMartingale mart = DyadicMartingale::build(2, 3);
  CHECK(mart.level(0).size() == 1);
  CHECK(mart.level(0)[0] == doctest::Approx(0.0));  // E f = 0
  CHECK(mart.level(1).size() == 4);
  CHECK(mart.level(3).size() == 64);
  CHECK(mart.level(1)[0] == doctest::Approx(std::log(4.0)).epsilon(1e-14));
  CHECK(mart.tower_max_deviation() <= 1e-12);

  CHECK_THROWS_AS(DyadicMartingale::build(4, 7), ResourceError);
  CHECK_THROWS_AS(DyadicMartingale::build(1, 3), DomainError);
  try {
    DyadicMartingale::build(4, 7);
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("budget") != std::string::npos);
  }
}

TEST_CASE("level difference norms") {
  SUBCASE("orthogonality at p = 2") {
    const DyadicMartingale mart = DyadicMartingale::build(2, 8);
    double sum_sq = 0.0;
    for (int m = 0; m < 8; ++m) {
      const LevelNorm ln = xi_level_norm(mart, m);
      CHECK(ln.exact);
      CHECK(ln.value >= 0.0);
      sum_sq += ln.value * ln.value;
    }
    const double s_norm = mart.level_norm(8, 2.0);
    CHECK(sum_sq == doctest::Approx(s_norm * s_norm).epsilon(1e-10));
  }

  SUBCASE("series bound with the analytic tail") {
    for (int p : {2, 3}) {
      const DyadicMartingale mart = DyadicMartingale::build(p, p == 2 ? 9 : 6);
      const SeriesBound series = series_prefix_and_tail(mart);
      const double rhs =
          20.0 * kLn2 * kLn2 / 9.0 +
          std::pow(riemann_zeta(p), 2.0 / p) / 3.0;
      CHECK(series.prefix + series.tail_bound <= rhs + 1e-9);
      CHECK(series.prefix > 0.0);
      CHECK(series.tail_bound > 0.0);
    }
  }

  SUBCASE("tail mode decays geometrically") {
    const DyadicMartingale mart = DyadicMartingale::build(3, 4);
    const LevelNorm t1 = xi_level_norm(mart, 6);
    const LevelNorm t2 = xi_level_norm(mart, 7);
    CHECK_FALSE(t1.exact);
    CHECK(t2.value == doctest::Approx(0.5 * t1.value).epsilon(1e-12));
    // The analytic bound really does dominate the exact value at a level
    // where both are available.
    const DyadicMartingale wide = DyadicMartingale::build(3, 5);
    const LevelNorm exact4 = xi_level_norm(wide, 4);
    const LevelNorm bound4 = xi_level_norm(mart, 4);
    CHECK(exact4.exact);
    CHECK_FALSE(bound4.exact);
    CHECK(bound4.value >= exact4.value);
  }
}

TEST_CASE("lower bound ratio and the limit formula") {
  const double z10 = zeta_oracle(10.0);
  const double expected10 =
      (1.0 / std::exp(1.0)) /
      std::sqrt(20.0 * kLn2 * kLn2 / 9.0 + std::pow(z10, 0.2) / 3.0);
  CHECK(limit_formula(10.0) == doctest::Approx(expected10).epsilon(1e-9));
  CHECK(limit_formula(10.0) == doctest::Approx(0.31078).epsilon(1e-4));

  CHECK(std::fabs(limit_formula(400.0) - constant_c()) < 1e-4);

  double prev = 0.0;
  for (double p : {4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0, 400.0}) {
    const double v = limit_formula(p);
    CHECK(v > prev);
    prev = v;
  }

  const SharpnessRatio r = lower_bound_ratio(3, 6);
  CHECK(r.ratio > 0.0);
  CHECK(r.numerator > 0.0);
  CHECK(r.denominator > 0.0);
  CHECK(r.limit == doctest::Approx(limit_formula(3.0)));

  std::ostringstream os;
  save_sharpness_csv(os, {r});
  CHECK(os.str().find("p,M,numerator,denominator,ratio") != std::string::npos);
}
