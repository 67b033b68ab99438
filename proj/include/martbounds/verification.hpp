#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "martbounds/gls.hpp"
#include "martbounds/simulate.hpp"

namespace martbounds {

struct VerifyConfig {
  std::uint64_t seed = 7;
  std::size_t reps = 100000;
  std::size_t table_reps = 200000;  // per-index estimation where needed
  std::vector<double> ps = {2.0, 3.0, 4.0, 6.0, 8.0};
  std::vector<std::size_t> ns = {16, 256, 4096};
  std::vector<GeneratorFamily> generators = {
      GeneratorFamily::Rademacher, GeneratorFamily::Gaussian,
      GeneratorFamily::TwoPointAsymmetric,
      GeneratorFamily::PredictableVariance};
  std::vector<MultiplierFamily> multipliers = {
      MultiplierFamily::Constant, MultiplierFamily::SignOfPast,
      MultiplierFamily::ClampedRunningSum,
      MultiplierFamily::GaussianPredictable};
  double multiplier_bound = 2.0;
  double threshold = 3.0;
  bool include_transform = true;
  int threads = 0;  // 0 keeps the runtime default

  static VerifyConfig preset(const std::string& name);  // "default" | "quick"
  std::string to_json() const;
  static VerifyConfig from_json(const std::string& text);
};

struct VerifyReport {
  VerifyConfig config;
  std::vector<BoundReport> reports;
  std::size_t violations = 0;
  std::size_t inconclusive = 0;

  bool all_hold() const { return violations == 0 && inconclusive == 0; }
  std::string to_json() const;
  void save_csv(std::ostream& os) const;
};

/// Runs the domination matrix: the martingale bound per (p, n, generator) and
/// the optimized transform bound per multiplier family on top.
VerifyReport run_verification(const VerifyConfig& cfg);

GeneratorSpec make_generator(GeneratorFamily family, std::size_t n,
                             std::size_t reps, std::uint64_t seed);
MultiplierSpec make_multiplier(MultiplierFamily family, double bound_v);

struct P2Sharpness {
  double empirical = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  double halfwidth = 0.0;
};

/// Empirical |n^{-1/2} S(n)|_2 against its exact p = 2 bound for iid
/// Rademacher differences.
P2Sharpness p2_sharpness(std::uint64_t seed, std::size_t n, std::size_t reps);

struct TailFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

struct TailPipelineResult {
  PsiFunction theta;
  std::vector<double> u;
  std::vector<double> bound;
  std::vector<double> survival;
  std::vector<double> wilson_hi;
  std::size_t compared = 0;  // grid points with resolvable survival
  bool dominated = false;
  TailFit sqrt_fit;    // -log survival against sqrt(u)
  TailFit linear_fit;  // -log survival against u
};

/// Gaussian differences with Gaussian predictable multipliers: the optimized
/// theta curve feeds the exponential tail bound, which must dominate the
/// Monte Carlo survival function of n^{-1/2} W(n).
TailPipelineResult run_tail_pipeline(std::uint64_t seed, std::size_t n,
                                     std::size_t reps,
                                     const std::vector<double>& u_grid);

}  // namespace martbounds
