#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include <doctest.h>

#include "martbounds/mixed_norms.hpp"
#include "martbounds/rng.hpp"

using namespace martbounds;

namespace {

std::vector<double> test_grid() { return {2.0, 3.0, 4.0, 6.0, 8.0, 16.0}; }

// Random nondecreasing curve from counter draws.
MomentCurve random_curve(std::uint64_t seed, std::uint64_t idx) {
  const std::vector<double> grid = test_grid();
  std::vector<double> v(grid.size());
  double acc = 0.1 + rng::uniform(seed, rng::kGeneric, idx, 0);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    acc += rng::uniform(seed, rng::kGeneric, idx, j + 1);
    v[j] = acc;
  }
  return MomentCurve(grid, std::move(v));
}

// Direct re-summation of the mixed norm in reversed index order.
double brute_mixed_norm(const MomentTable& t, double p, double lambda,
                        std::size_t n) {
  if (lambda == kInf) {
    double m = 0.0;
    for (std::size_t i = n; i-- > 0;) m = std::max(m, t.curve(i).at(p));
    return m;
  }
  double s = 0.0;
  for (std::size_t i = n; i-- > 0;) s += std::pow(t.curve(i).at(p), lambda);
  return std::pow(s / static_cast<double>(n), 1.0 / lambda);
}

}  // namespace

TEST_CASE("mixed norm identities and errors") {
  const MomentTable ones =
      MomentTable::constant(constant_moment_curve(test_grid(), 1.0), 8);
  CHECK(mixed_norm(ones, 3.0, 2.0, 8) == doctest::Approx(1.0));
  CHECK(mixed_norm(ones, 4.0, kInf, 5) == doctest::Approx(1.0));

  const MomentTable two_rows(
      {constant_moment_curve(test_grid(), 0.0),
       constant_moment_curve(test_grid(), 2.0)});
  CHECK(mixed_norm(two_rows, 3.0, 2.0, 2) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  CHECK_THROWS_AS(mixed_norm(ones, 3.0, 0.5, 8), DomainError);
  CHECK_THROWS_AS(mixed_norm(ones, 3.0, 2.0, 9), DomainError);
  CHECK_THROWS_AS(MomentTable(std::vector<MomentCurve>{}), DomainError);
}

TEST_CASE("mixed norm agrees with direct re-summation") {
  std::vector<MomentCurve> curves;
  for (std::uint64_t i = 0; i < 16; ++i) curves.push_back(random_curve(3, i));
  const MomentTable t(std::move(curves));
  for (double p : {2.0, 3.0, 8.0})
    for (double lam : {1.0, 2.0, 3.5, kInf}) {
      const double a = mixed_norm(t, p, lam, 16);
      const double b = brute_mixed_norm(t, p, lam, 16);
      CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
}

TEST_CASE("mixed norm structural properties") {
  std::vector<MomentCurve> curves;
  for (std::uint64_t i = 0; i < 12; ++i) curves.push_back(random_curve(5, i));
  const MomentTable t(curves);

  // Power-mean monotonicity in lambda on the normalized measure.
  for (double p : {2.0, 4.0}) {
    double prev = 0.0;
    for (double lam : {1.0, 1.5, 2.0, 4.0, 16.0, kInf}) {
      const double v = mixed_norm(t, p, lam, 12);
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }

  // Nondecreasing in p.
  double prev_p = 0.0;
  for (double p : test_grid()) {
    const double v = mixed_norm(t, p, 2.0, 12);
    CHECK(v >= prev_p - 1e-12);
    prev_p = v;
  }

  // Permutation invariance.
  std::vector<MomentCurve> shuffled = curves;
  std::reverse(shuffled.begin(), shuffled.end());
  std::swap(shuffled[2], shuffled[7]);
  const MomentTable ts(std::move(shuffled));
  CHECK(mixed_norm(ts, 3.0, 2.5, 12) ==
        doctest::Approx(mixed_norm(t, 3.0, 2.5, 12)).epsilon(1e-12));

  // Positive homogeneity.
  std::vector<MomentCurve> scaled;
  for (const auto& c : curves) {
    std::vector<double> v = c.value();
    for (double& x : v) x *= 3.25;
    scaled.emplace_back(c.p(), std::move(v));
  }
  const MomentTable tsc(std::move(scaled));
  CHECK(mixed_norm(tsc, 4.0, 3.0, 12) ==
        doctest::Approx(3.25 * mixed_norm(t, 4.0, 3.0, 12)).epsilon(1e-12));

  // Horizon sup is the max over prefixes.
  double best = 0.0;
  for (std::size_t n = 1; n <= 12; ++n)
    best = std::max(best, mixed_norm(t, 3.0, 2.0, n));
  CHECK(mixed_norm_horizon_sup(t, 3.0, 2.0) == doctest::Approx(best));
}

TEST_CASE("empirical moment curves") {
  const std::vector<double> grid = test_grid();

  SUBCASE("rademacher samples give the constant curve") {
    std::vector<double> samples(5000);
    for (std::size_t r = 0; r < samples.size(); ++r)
      samples[r] = rng::rademacher(11, rng::kGeneric, r, 0);
    const EmpiricalCurve c = empirical_moment_curve(samples, grid);
    for (double v : c.curve.value()) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.isotonic_adjustment <= 1e-12);
    CHECK(c.halfwidth.size() == grid.size());
  }

  SUBCASE("gaussian fourth moment") {
    std::vector<double> samples(200000);
    for (std::size_t r = 0; r < samples.size(); ++r)
      samples[r] = rng::gaussian(12, rng::kGeneric, r, 0);
    const EmpiricalCurve c = empirical_moment_curve(samples, grid);
    const std::size_t j4 = 2;  // grid[2] == 4
    const double expected = std::pow(3.0, 0.25);
    CHECK(std::fabs(c.curve.value()[j4] - expected) <= 3.0 * c.halfwidth[j4]);
  }

  SUBCASE("degenerate constant sample") {
    const std::vector<double> samples(256, 2.0);
    const EmpiricalCurve c = empirical_moment_curve(samples, grid);
    for (double v : c.curve.value()) CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
    for (double h : c.halfwidth) CHECK(h == doctest::Approx(0.0));
  }

  SUBCASE("error paths") {
    std::vector<double> bad = {1.0, kInf};
    CHECK_THROWS_AS(empirical_moment_curve(bad, grid), DomainError);
    const std::vector<double> few(50, 1.0);
    CHECK(empirical_moment_curve(few, grid).halfwidth.empty());
  }
}

TEST_CASE("isotonic correction") {
  std::vector<double> v = {1.0, 0.5, 2.0, 1.5, 3.0};
  const double adj = isotonic_nondecreasing(v);
  CHECK(adj > 0.0);
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] >= v[i - 1]);
}

TEST_CASE("natural function is the pointwise supremum") {
  const std::vector<double> grid = test_grid();
  std::vector<double> sqrtp(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) sqrtp[j] = std::sqrt(grid[j]);
  const MomentCurve root(grid, sqrtp);
  const MomentCurve one = constant_moment_curve(grid, 1.0);

  const std::vector<MomentCurve> single = {root};
  const PsiFunction nf1 = natural_function(single);
  for (double p : grid) CHECK(nf1(p) == doctest::Approx(std::sqrt(p)));

  const std::vector<MomentCurve> pair = {root, one};
  const PsiFunction nf2 = natural_function(pair);
  for (double p : grid) CHECK(nf2(p) == doctest::Approx(std::sqrt(p)));

  std::vector<MomentCurve> family;
  for (std::uint64_t i = 0; i < 10; ++i) family.push_back(random_curve(21, i));
  const PsiFunction nf = natural_function(family);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    double best = 0.0;
    for (const auto& c : family) best = std::max(best, c.value()[j]);
    CHECK(nf(grid[j]) == doctest::Approx(best).epsilon(1e-12));
  }

  CHECK_THROWS_AS(natural_function(std::vector<MomentCurve>{}), DomainError);
}

TEST_CASE("sample matrix binary round trip") {
  SampleMatrix m;
  m.reps = 32;
  m.n = 4;
  m.seed = 99;
  m.generator = "rademacher";
  m.data.resize(m.reps * m.n);
  for (std::size_t i = 0; i < m.data.size(); ++i)
    m.data[i] = rng::uniform(7, rng::kGeneric, i, 0);

  const std::string path =
      (std::filesystem::temp_directory_path() / "mb_samples.f64").string();
  m.save(path);
  const SampleMatrix back = SampleMatrix::load(path);
  CHECK(back.reps == m.reps);
  CHECK(back.n == m.n);
  CHECK(back.seed == m.seed);
  CHECK(back.generator == m.generator);
  CHECK(back.data == m.data);
  std::remove(path.c_str());
  std::remove((path + ".json").c_str());

  SampleMatrix bad = m;
  bad.data[5] = kInf;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("moment table csv round trip") {
  std::vector<MomentCurve> curves;
  for (std::uint64_t i = 0; i < 3; ++i) curves.push_back(random_curve(31, i));
  const MomentTable t(curves);
  std::ostringstream os;
  t.save_csv(os);
  std::istringstream is(os.str());
  const MomentTable back = MomentTable::load_csv(is);
  REQUIRE(back.horizon() == t.horizon());
  for (std::size_t i = 0; i < t.horizon(); ++i)
    CHECK(back.curve(i).value() == t.curve(i).value());
}
