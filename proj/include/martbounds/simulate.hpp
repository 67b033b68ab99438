#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "martbounds/bounds.hpp"
#include "martbounds/mixed_norms.hpp"

namespace martbounds {

enum class GeneratorFamily {
  Rademacher,
  Gaussian,
  TwoPointAsymmetric,
  PredictableVariance,
  DyadicEmbedded,
};

enum class MultiplierFamily {
  Constant,
  DeterministicSequence,
  SignOfPast,
  ClampedRunningSum,
  GaussianPredictable,
};

std::string to_string(GeneratorFamily f);
std::string to_string(MultiplierFamily f);
GeneratorFamily generator_from_string(const std::string& name);
MultiplierFamily multiplier_from_string(const std::string& name);

struct GeneratorSpec {
  GeneratorFamily family = GeneratorFamily::Rademacher;
  std::size_t n = 1;
  std::size_t reps = 2;
  std::uint64_t seed = 0;
  // gaussian: per-step variances rho^2(i); one entry means constant.
  std::vector<double> variances{1.0};
  // two_point_asymmetric: values (a, -b) with mean-zero weights.
  double tp_a = 3.0;
  double tp_b = 1.0;
  // predictable_variance: sigma^2(i) = omega + gamma * xi(i-1)^2,
  // started at the fixed point omega / (1 - gamma).
  double arch_omega = 0.75;
  double arch_gamma = 0.25;
  // dyadic_embedded: construction exponent.
  int dyadic_p = 2;

  double variance_at(std::size_t i) const;  // 1-based step index
  void validate() const;
  std::string to_json() const;
  static GeneratorSpec from_json(const std::string& text);
};

struct MultiplierSpec {
  MultiplierFamily family = MultiplierFamily::Constant;
  double bound_v = 1.0;               // constant value / clamp limit
  std::vector<double> sequence;       // deterministic_sequence values
  std::vector<double> variances{1.0}; // gaussian_predictable sigma^2(i)

  double variance_at(std::size_t i) const;
  void validate(std::size_t n) const;
  std::string to_json() const;
  static MultiplierSpec from_json(const std::string& text);
};

/// Seeded ensemble of simulated paths. Full matrices are kept only when the
/// batch is small enough to materialize; the scaled endpoints
/// n^{-1/2} S(n) and n^{-1/2} W(n) are always kept.
struct PathBatch {
  GeneratorSpec gspec;
  std::optional<MultiplierSpec> mspec;
  std::vector<double> scaled_s;  // per replicate
  std::vector<double> scaled_w;  // per replicate; empty until attached
  std::vector<double> xi;        // reps x n, only when materialized
  std::vector<double> b;         // reps x n, only when materialized

  bool materialized() const { return !xi.empty(); }
};

inline constexpr std::size_t kMaterializeLimit = 1u << 24;

/// Deterministic given (spec, seed) regardless of thread count.
PathBatch generate(const GeneratorSpec& spec,
                   bool materialize_if_small = true);

/// Recomputes the walk with predictable multipliers from strict prefixes and
/// fills the transform endpoints.
PathBatch attach_multipliers(const PathBatch& batch,
                             const MultiplierSpec& mspec);

enum class Target { Sum, Transform };

struct NormEstimate {
  double value = 0.0;
  double halfwidth = 0.0;
};

/// (mean |x|^p)^{1/p} over the scaled endpoint column with a delta-method
/// half-width.
NormEstimate empirical_norm_at(const PathBatch& batch, double p, Target t,
                               double z = 1.96);

struct BatchNorms {
  EmpiricalCurve sum;
  std::optional<EmpiricalCurve> transform;
};

BatchNorms empirical_norms(const PathBatch& batch,
                           const std::vector<double>& p_grid);

struct TailEstimate {
  std::vector<double> u;
  std::vector<double> survival;
  std::vector<double> lo, hi;  // Wilson interval
  double zero_atom = 0.0;
  std::size_t reps = 0;
};

/// Survival estimates of |n^{-1/2} W(n)| (or S when no multipliers).
TailEstimate empirical_tail(const PathBatch& batch,
                            const std::vector<double>& u_grid);

BoundReport adjudicate(const PathBatch& batch, double bound, double p,
                       Target t, double threshold = 3.0);

// ---- Moment-table builders for the bound evaluators -----------------------

/// Exact per-index p-norms where the family admits closed forms; for the
/// predictable_variance family only even p in {2,4,6,8,10} are exact.
std::vector<double> exact_index_pnorms(const GeneratorSpec& spec, double p);

/// Per-index p-norms estimated from an independent counter stream.
std::vector<double> empirical_index_pnorms(const GeneratorSpec& spec, double p,
                                           std::size_t reps_estimate);

/// Grid moment table for the differences. For predictable_variance this is
/// the even-moment step envelope (a valid upper bound curve per index) whose
/// support ends where the moments stop existing.
MomentTable xi_grid_table(const GeneratorSpec& spec,
                          const std::vector<double>& p_grid);

/// Grid moment table for the multipliers; bounded families use their sup as
/// a constant envelope curve.
MomentTable multiplier_grid_table(const MultiplierSpec& mspec, std::size_t n,
                                  const std::vector<double>& p_grid);

/// predictable_variance exact even moments: (E xi(i)^{2k})^{1/(2k)}.
double arch_even_norm(const GeneratorSpec& spec, std::size_t i, int k);

/// Multipliers recomputed from an explicit difference row; b(i) only sees the
/// strict prefix xi(1..i-1), which the predictability test exercises by
/// mutating suffixes.
std::vector<double> multipliers_for_path(const MultiplierSpec& mspec,
                                         const GeneratorSpec& gspec,
                                         std::uint64_t rep,
                                         std::span<const double> xi_row);

}  // namespace martbounds
