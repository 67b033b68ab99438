#include "martbounds/simulate.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "martbounds/rng.hpp"
#include "martbounds/sharpness.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace martbounds {

std::string to_string(GeneratorFamily f) {
  switch (f) {
    case GeneratorFamily::Rademacher: return "rademacher";
    case GeneratorFamily::Gaussian: return "gaussian";
    case GeneratorFamily::TwoPointAsymmetric: return "two_point_asymmetric";
    case GeneratorFamily::PredictableVariance: return "predictable_variance";
    case GeneratorFamily::DyadicEmbedded: return "dyadic_embedded";
  }
  return "rademacher";
}

std::string to_string(MultiplierFamily f) {
  switch (f) {
    case MultiplierFamily::Constant: return "constant";
    case MultiplierFamily::DeterministicSequence: return "deterministic_sequence";
    case MultiplierFamily::SignOfPast: return "sign_of_past";
    case MultiplierFamily::ClampedRunningSum: return "clamped_running_sum";
    case MultiplierFamily::GaussianPredictable: return "gaussian_predictable";
  }
  return "constant";
}

GeneratorFamily generator_from_string(const std::string& name) {
  for (GeneratorFamily f :
       {GeneratorFamily::Rademacher, GeneratorFamily::Gaussian,
        GeneratorFamily::TwoPointAsymmetric,
        GeneratorFamily::PredictableVariance, GeneratorFamily::DyadicEmbedded})
    if (to_string(f) == name) return f;
  throw DomainError("unknown generator family: " + name);
}

MultiplierFamily multiplier_from_string(const std::string& name) {
  for (MultiplierFamily f :
       {MultiplierFamily::Constant, MultiplierFamily::DeterministicSequence,
        MultiplierFamily::SignOfPast, MultiplierFamily::ClampedRunningSum,
        MultiplierFamily::GaussianPredictable})
    if (to_string(f) == name) return f;
  throw DomainError("unknown multiplier family: " + name);
}

double GeneratorSpec::variance_at(std::size_t i) const {
  if (variances.empty()) return 1.0;
  return variances.size() == 1 ? variances[0]
                               : variances.at((i - 1) % variances.size());
}

void GeneratorSpec::validate() const {
  if (n == 0) throw DomainError("GeneratorSpec: n must be positive");
  if (reps < 2) throw DomainError("GeneratorSpec: reps must be >= 2");
  for (double v : variances)
    if (!(v > 0.0) || !std::isfinite(v))
      throw DomainError("GeneratorSpec: variances must be finite and positive");
  if (family == GeneratorFamily::TwoPointAsymmetric &&
      (!(tp_a > 0.0) || !(tp_b > 0.0)))
    throw DomainError("GeneratorSpec: two-point values must be positive");
  if (family == GeneratorFamily::PredictableVariance) {
    if (!(arch_omega > 0.0) || !(arch_gamma >= 0.0) || !(arch_gamma < 1.0))
      throw DomainError("GeneratorSpec: need omega > 0 and gamma in [0, 1)");
  }
  if (family == GeneratorFamily::DyadicEmbedded) {
    if (dyadic_p < 2)
      throw DomainError("GeneratorSpec: dyadic construction needs p >= 2");
    if (n * static_cast<std::size_t>(dyadic_p) > 62)
      throw ResourceError(
          "GeneratorSpec: dyadic_embedded horizon exceeds 62 bits of cell "
          "index");
  }
}

std::string GeneratorSpec::to_json() const {
  nlohmann::json j{{"family", to_string(family)}, {"n", n},   {"reps", reps},
                   {"seed", seed},                {"variances", variances}};
  if (family == GeneratorFamily::TwoPointAsymmetric) {
    j["a"] = tp_a;
    j["b"] = tp_b;
  }
  if (family == GeneratorFamily::PredictableVariance) {
    j["omega"] = arch_omega;
    j["gamma"] = arch_gamma;
  }
  if (family == GeneratorFamily::DyadicEmbedded) j["construction_p"] = dyadic_p;
  return j.dump();
}

GeneratorSpec GeneratorSpec::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  GeneratorSpec s;
  s.family = generator_from_string(j.at("family").get<std::string>());
  s.n = j.at("n").get<std::size_t>();
  s.reps = j.at("reps").get<std::size_t>();
  s.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("variances"))
    s.variances = j["variances"].get<std::vector<double>>();
  s.tp_a = j.value("a", s.tp_a);
  s.tp_b = j.value("b", s.tp_b);
  s.arch_omega = j.value("omega", s.arch_omega);
  s.arch_gamma = j.value("gamma", s.arch_gamma);
  s.dyadic_p = j.value("construction_p", s.dyadic_p);
  s.validate();
  return s;
}

double MultiplierSpec::variance_at(std::size_t i) const {
  if (variances.empty()) return 1.0;
  return variances.size() == 1 ? variances[0]
                               : variances.at((i - 1) % variances.size());
}

void MultiplierSpec::validate(std::size_t n) const {
  if (family == MultiplierFamily::DeterministicSequence && sequence.size() < n)
    throw DomainError("MultiplierSpec: sequence shorter than the horizon");
  if ((family == MultiplierFamily::Constant ||
       family == MultiplierFamily::ClampedRunningSum) &&
      !(bound_v >= 0.0 && std::isfinite(bound_v)))
    throw DomainError("MultiplierSpec: bound must be finite and >= 0");
  for (double v : variances)
    if (!(v > 0.0) || !std::isfinite(v))
      throw DomainError("MultiplierSpec: variances must be finite and positive");
}

std::string MultiplierSpec::to_json() const {
  nlohmann::json j{{"family", to_string(family)}, {"bound", bound_v},
                   {"variances", variances}};
  if (!sequence.empty()) j["sequence"] = sequence;
  return j.dump();
}

MultiplierSpec MultiplierSpec::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  MultiplierSpec s;
  s.family = multiplier_from_string(j.at("family").get<std::string>());
  s.bound_v = j.value("bound", 1.0);
  if (j.contains("sequence"))
    s.sequence = j["sequence"].get<std::vector<double>>();
  if (j.contains("variances"))
    s.variances = j["variances"].get<std::vector<double>>();
  return s;
}

namespace {

// One difference draw; the predictable_variance state is the previous
// squared difference.
double next_difference(const GeneratorSpec& spec, std::uint64_t stream,
                       std::uint64_t rep, std::size_t i, double prev_xi_sq,
                       double dyadic_x) {
  switch (spec.family) {
    case GeneratorFamily::Rademacher:
      return rng::rademacher(spec.seed, stream, rep, i);
    case GeneratorFamily::Gaussian:
      return std::sqrt(spec.variance_at(i)) *
             rng::gaussian(spec.seed, stream, rep, i);
    case GeneratorFamily::TwoPointAsymmetric: {
      const double u = rng::uniform(spec.seed, stream, rep, i);
      const double pa = spec.tp_b / (spec.tp_a + spec.tp_b);
      return u < pa ? spec.tp_a : -spec.tp_b;
    }
    case GeneratorFamily::PredictableVariance: {
      const double s2 =
          i == 1 ? spec.arch_omega / (1.0 - spec.arch_gamma)
                 : spec.arch_omega + spec.arch_gamma * prev_xi_sq;
      return std::sqrt(s2) * rng::gaussian(spec.seed, stream, rep, i);
    }
    case GeneratorFamily::DyadicEmbedded: {
      const int cp = spec.dyadic_p;
      const auto cell = [&](int m) {
        const double scaled = std::ldexp(dyadic_x, m * cp);
        return DyadicMartingale::cell_value(
            cp, m, static_cast<std::uint64_t>(scaled));
      };
      const int m = static_cast<int>(i);
      return cell(m) - cell(m - 1);
    }
  }
  return 0.0;
}

double multiplier_value(const MultiplierSpec& m, const GeneratorSpec& g,
                        std::uint64_t rep, std::size_t i, double prefix_sum) {
  switch (m.family) {
    case MultiplierFamily::Constant:
      return m.bound_v;
    case MultiplierFamily::DeterministicSequence:
      return m.sequence[i - 1];
    case MultiplierFamily::SignOfPast:
      return (i == 1 || prefix_sum >= 0.0) ? 1.0 : -1.0;
    case MultiplierFamily::ClampedRunningSum:
      return std::clamp(prefix_sum, -m.bound_v, m.bound_v);
    case MultiplierFamily::GaussianPredictable:
      // Driven by an auxiliary stream indexed by the previous step, so the
      // value is known before xi(i) is drawn.
      return std::sqrt(m.variance_at(i)) *
             rng::gaussian(g.seed, rng::kAux, rep, i - 1);
  }
  return 0.0;
}

struct WalkResult {
  double sum = 0.0;
  double transform = 0.0;
};

WalkResult walk(const GeneratorSpec& g, const MultiplierSpec* m,
                std::uint64_t stream, std::uint64_t rep, double* xi_row,
                double* b_row) {
  double s = 0.0, w = 0.0, prev_sq = 0.0;
  const double x = g.family == GeneratorFamily::DyadicEmbedded
                       ? rng::uniform_pos(g.seed, stream, rep, 0)
                       : 0.0;
  for (std::size_t i = 1; i <= g.n; ++i) {
    double bi = 1.0;
    if (m != nullptr) bi = multiplier_value(*m, g, rep, i, s);
    const double xi = next_difference(g, stream, rep, i, prev_sq, x);
    prev_sq = xi * xi;
    s += xi;
    w += bi * xi;
    if (xi_row != nullptr) xi_row[i - 1] = xi;
    if (b_row != nullptr) b_row[i - 1] = bi;
  }
  return {s, w};
}

}  // namespace

PathBatch generate(const GeneratorSpec& spec, bool materialize_if_small) {
  spec.validate();
  PathBatch batch;
  batch.gspec = spec;
  batch.scaled_s.resize(spec.reps);
  const bool keep = materialize_if_small && spec.reps * spec.n <= kMaterializeLimit;
  if (keep) batch.xi.resize(spec.reps * spec.n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(spec.n));
  const std::int64_t reps = static_cast<std::int64_t>(spec.reps);
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < reps; ++r) {
    double* row = keep ? batch.xi.data() + r * spec.n : nullptr;
    const WalkResult res = walk(spec, nullptr, rng::kDifferences,
                                static_cast<std::uint64_t>(r), row, nullptr);
    batch.scaled_s[r] = res.sum * scale;
  }
  return batch;
}

PathBatch attach_multipliers(const PathBatch& batch,
                             const MultiplierSpec& mspec) {
  mspec.validate(batch.gspec.n);
  PathBatch out = batch;
  out.mspec = mspec;
  out.scaled_w.resize(batch.gspec.reps);
  const bool keep = batch.materialized();
  if (keep) out.b.resize(out.xi.size());
  const GeneratorSpec& g = out.gspec;
  const double scale = 1.0 / std::sqrt(static_cast<double>(g.n));
  const std::int64_t reps = static_cast<std::int64_t>(g.reps);
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < reps; ++r) {
    double* brow = keep ? out.b.data() + r * g.n : nullptr;
    const WalkResult res = walk(g, &mspec, rng::kDifferences,
                                static_cast<std::uint64_t>(r), nullptr, brow);
    out.scaled_w[r] = res.transform * scale;
  }
  return out;
}

namespace {

const std::vector<double>& target_column(const PathBatch& batch, Target t) {
  if (t == Target::Transform) {
    if (batch.scaled_w.empty())
      throw DomainError("no multipliers attached to this batch");
    return batch.scaled_w;
  }
  return batch.scaled_s;
}

}  // namespace

NormEstimate empirical_norm_at(const PathBatch& batch, double p, Target t,
                               double z) {
  const auto& col = target_column(batch, t);
  const double r = static_cast<double>(col.size());
  std::vector<double> powered(col.size());
  for (std::size_t i = 0; i < col.size(); ++i) powered[i] = abspow(col[i], p);
  const double mean = pairwise_sum(powered) / r;
  double ss = 0.0;
  for (double x : powered) ss += (x - mean) * (x - mean);
  const double se = std::sqrt(ss / (r - 1.0) / r);
  NormEstimate est;
  est.value = std::pow(mean, 1.0 / p);
  est.halfwidth =
      mean > 0.0 ? z * se * std::pow(mean, 1.0 / p - 1.0) / p : 0.0;
  return est;
}

BatchNorms empirical_norms(const PathBatch& batch,
                           const std::vector<double>& p_grid) {
  BatchNorms out{empirical_moment_curve(batch.scaled_s, p_grid), std::nullopt};
  if (!batch.scaled_w.empty())
    out.transform = empirical_moment_curve(batch.scaled_w, p_grid);
  return out;
}

TailEstimate empirical_tail(const PathBatch& batch,
                            const std::vector<double>& u_grid) {
  const auto& col =
      batch.scaled_w.empty() ? batch.scaled_s : batch.scaled_w;
  std::vector<double> magnitudes(col.size());
  for (std::size_t i = 0; i < col.size(); ++i)
    magnitudes[i] = std::fabs(col[i]);
  std::sort(magnitudes.begin(), magnitudes.end());
  TailEstimate out;
  out.reps = magnitudes.size();
  out.zero_atom = static_cast<double>(std::count(magnitudes.begin(),
                                                 magnitudes.end(), 0.0)) /
                  static_cast<double>(magnitudes.size());
  for (double u : u_grid) {
    const auto it =
        std::upper_bound(magnitudes.begin(), magnitudes.end(), u);
    const std::size_t exceed =
        static_cast<std::size_t>(magnitudes.end() - it);
    out.u.push_back(u);
    out.survival.push_back(static_cast<double>(exceed) /
                           static_cast<double>(magnitudes.size()));
    const Interval iv = wilson_interval(exceed, magnitudes.size());
    out.lo.push_back(iv.lo);
    out.hi.push_back(iv.hi);
  }
  return out;
}

BoundReport adjudicate(const PathBatch& batch, double bound, double p,
                       Target t, double threshold) {
  const NormEstimate est = empirical_norm_at(batch, p, t);
  BoundReport rep;
  rep.name = t == Target::Sum ? "martingale" : "transform";
  rep.bound = bound;
  rep.empirical = est.value;
  rep.halfwidth = est.halfwidth;
  rep.p = p;
  rep.n = batch.gspec.n;
  rep.generator = to_string(batch.gspec.family) +
                  (batch.mspec ? "+" + to_string(batch.mspec->family) : "");
  rep.seed = batch.gspec.seed;
  rep.verdict = batch.gspec.reps < 100
                    ? Verdict::Inconclusive
                    : adjudicate_value(est.value, est.halfwidth, bound,
                                       threshold);
  return rep;
}

double arch_even_norm(const GeneratorSpec& spec, std::size_t i, int k) {
  if (spec.family != GeneratorFamily::PredictableVariance)
    throw DomainError("arch_even_norm: wrong generator family");
  if (k < 1 || k > 5)
    throw DomainError("arch_even_norm: even moments tracked for k in 1..5");
  static const double dfact[6] = {1.0, 1.0, 3.0, 15.0, 105.0, 945.0};
  // Existence: gamma^k (2k-1)!! < 1.
  if (std::pow(spec.arch_gamma, k) * dfact[k] >= 1.0)
    throw DomainError("arch_even_norm: moment of this order diverges");
  const double s0 = spec.arch_omega / (1.0 - spec.arch_gamma);
  // M[j](step) = E xi(step)^{2j}; binomial recursion through omega+gamma*x.
  std::vector<double> moments(static_cast<std::size_t>(k) + 1, 1.0);
  for (int j = 1; j <= k; ++j) moments[j] = dfact[j] * std::pow(s0, j);
  for (std::size_t step = 2; step <= i; ++step) {
    std::vector<double> next(moments.size(), 1.0);
    for (int j = 1; j <= k; ++j) {
      double acc = 0.0;
      double binom = 1.0;
      for (int t = 0; t <= j; ++t) {
        acc += binom * std::pow(spec.arch_omega, j - t) *
               std::pow(spec.arch_gamma, t) * moments[t];
        binom *= static_cast<double>(j - t) / static_cast<double>(t + 1);
      }
      next[j] = dfact[j] * acc;
    }
    moments = std::move(next);
  }
  return std::pow(moments[static_cast<std::size_t>(k)], 1.0 / (2.0 * k));
}

std::vector<double> multipliers_for_path(const MultiplierSpec& mspec,
                                         const GeneratorSpec& gspec,
                                         std::uint64_t rep,
                                         std::span<const double> xi_row) {
  mspec.validate(xi_row.size());
  std::vector<double> out(xi_row.size());
  double prefix = 0.0;
  for (std::size_t i = 1; i <= xi_row.size(); ++i) {
    out[i - 1] = multiplier_value(mspec, gspec, rep, i, prefix);
    prefix += xi_row[i - 1];
  }
  return out;
}

std::vector<double> exact_index_pnorms(const GeneratorSpec& spec, double p) {
  std::vector<double> out(spec.n);
  switch (spec.family) {
    case GeneratorFamily::Rademacher:
      std::fill(out.begin(), out.end(), 1.0);
      return out;
    case GeneratorFamily::Gaussian:
      for (std::size_t i = 1; i <= spec.n; ++i)
        out[i - 1] = gaussian_abs_norm(p, std::sqrt(spec.variance_at(i)));
      return out;
    case GeneratorFamily::TwoPointAsymmetric: {
      const double top = std::max(spec.tp_a, spec.tp_b);
      const double s =
          (spec.tp_b * std::pow(spec.tp_a / top, p) +
           spec.tp_a * std::pow(spec.tp_b / top, p)) /
          (spec.tp_a + spec.tp_b);
      std::fill(out.begin(), out.end(), top * std::pow(s, 1.0 / p));
      return out;
    }
    case GeneratorFamily::PredictableVariance: {
      const int k = static_cast<int>(p / 2.0);
      if (2.0 * k != p)
        throw DomainError(
            "exact_index_pnorms: predictable_variance is exact at even p "
            "only");
      for (std::size_t i = 1; i <= spec.n; ++i)
        out[i - 1] = arch_even_norm(spec, i, k);
      return out;
    }
    case GeneratorFamily::DyadicEmbedded: {
      const int levels = static_cast<int>(spec.n);
      const DyadicMartingale mart =
          DyadicMartingale::build(spec.dyadic_p, levels);
      for (std::size_t i = 1; i <= spec.n; ++i) {
        const auto& lov = mart.level(static_cast<int>(i) - 1);
        const auto& hiv = mart.level(static_cast<int>(i));
        const double measure = 1.0 / static_cast<double>(hiv.size());
        const std::uint64_t shift = static_cast<unsigned>(spec.dyadic_p);
        std::vector<double> terms(hiv.size());
        for (std::uint64_t c = 0; c < hiv.size(); ++c)
          terms[c] = measure * abspow(hiv[c] - lov[c >> shift], p);
        out[i - 1] = std::pow(pairwise_sum(terms), 1.0 / p);
      }
      return out;
    }
  }
  throw DomainError("exact_index_pnorms: unsupported family");
}

std::vector<double> empirical_index_pnorms(const GeneratorSpec& spec, double p,
                                           std::size_t reps_estimate) {
  GeneratorSpec est = spec;
  est.reps = reps_estimate;
  est.validate();
  const std::size_t n = est.n;
  // Fixed-size replicate chunks accumulated independently, then combined in
  // chunk order, so the totals do not depend on the thread count.
  const std::size_t chunk = 256;
  const std::size_t n_chunks = (reps_estimate + chunk - 1) / chunk;
  std::vector<std::vector<double>> partial(n_chunks,
                                           std::vector<double>(n, 0.0));
  const std::int64_t chunks = static_cast<std::int64_t>(n_chunks);
#pragma omp parallel
  {
    std::vector<double> row(n);
#pragma omp for schedule(static)
    for (std::int64_t c = 0; c < chunks; ++c) {
      auto& acc = partial[static_cast<std::size_t>(c)];
      const std::size_t lo = static_cast<std::size_t>(c) * chunk;
      const std::size_t hi = std::min(lo + chunk, reps_estimate);
      for (std::size_t r = lo; r < hi; ++r) {
        walk(est, nullptr, rng::kTableEstimation, r, row.data(), nullptr);
        for (std::size_t i = 0; i < n; ++i) acc[i] += abspow(row[i], p);
      }
    }
  }
  std::vector<double> out(n, 0.0);
  for (const auto& acc : partial)
    for (std::size_t i = 0; i < n; ++i) out[i] += acc[i];
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::pow(out[i] / static_cast<double>(reps_estimate), 1.0 / p);
  return out;
}

MomentTable xi_grid_table(const GeneratorSpec& spec,
                          const std::vector<double>& p_grid) {
  switch (spec.family) {
    case GeneratorFamily::Rademacher:
      return MomentTable::constant(constant_moment_curve(p_grid, 1.0), spec.n);
    case GeneratorFamily::TwoPointAsymmetric:
      return MomentTable::constant(
          two_point_moment_curve(p_grid, spec.tp_a, spec.tp_b), spec.n);
    case GeneratorFamily::Gaussian: {
      std::vector<MomentCurve> curves;
      curves.reserve(spec.n);
      for (std::size_t i = 1; i <= spec.n; ++i)
        curves.push_back(
            gaussian_moment_curve(p_grid, std::sqrt(spec.variance_at(i))));
      return MomentTable(std::move(curves));
    }
    case GeneratorFamily::PredictableVariance: {
      // Even-moment step envelope: at grid q use the exact even norm at the
      // even order just above q; drop grid points past the last finite order.
      static const double dfact[6] = {1.0, 1.0, 3.0, 15.0, 105.0, 945.0};
      std::vector<double> grid;
      for (double q : p_grid) {
        if (q > 10.0) continue;
        const int k = std::max(1, static_cast<int>(std::ceil(q / 2.0)));
        if (std::pow(spec.arch_gamma, k) * dfact[k] < 1.0) grid.push_back(q);
      }
      if (grid.size() < 2)
        throw DomainError("xi_grid_table: no usable grid for this family");
      std::vector<MomentCurve> curves;
      curves.reserve(spec.n);
      for (std::size_t i = 1; i <= spec.n; ++i) {
        std::vector<double> v(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j) {
          const int k = static_cast<int>(std::ceil(grid[j] / 2.0));
          v[j] = arch_even_norm(spec, i, std::max(1, k));
        }
        curves.emplace_back(grid, std::move(v));
      }
      return MomentTable(std::move(curves));
    }
    case GeneratorFamily::DyadicEmbedded: {
      std::vector<MomentCurve> curves;
      curves.reserve(spec.n);
      std::vector<std::vector<double>> values(
          spec.n, std::vector<double>(p_grid.size()));
      for (std::size_t j = 0; j < p_grid.size(); ++j) {
        const auto col = exact_index_pnorms(spec, p_grid[j]);
        for (std::size_t i = 0; i < spec.n; ++i) values[i][j] = col[i];
      }
      for (std::size_t i = 0; i < spec.n; ++i)
        curves.emplace_back(p_grid, std::move(values[i]));
      return MomentTable(std::move(curves));
    }
  }
  throw DomainError("xi_grid_table: unsupported family");
}

MomentTable multiplier_grid_table(const MultiplierSpec& mspec, std::size_t n,
                                  const std::vector<double>& p_grid) {
  mspec.validate(n);
  switch (mspec.family) {
    case MultiplierFamily::Constant:
    case MultiplierFamily::ClampedRunningSum:
      return MomentTable::constant(
          constant_moment_curve(p_grid, mspec.bound_v), n);
    case MultiplierFamily::SignOfPast:
      return MomentTable::constant(constant_moment_curve(p_grid, 1.0), n);
    case MultiplierFamily::DeterministicSequence: {
      std::vector<MomentCurve> curves;
      curves.reserve(n);
      for (std::size_t i = 0; i < n; ++i)
        curves.push_back(
            constant_moment_curve(p_grid, std::fabs(mspec.sequence[i])));
      return MomentTable(std::move(curves));
    }
    case MultiplierFamily::GaussianPredictable: {
      std::vector<MomentCurve> curves;
      curves.reserve(n);
      for (std::size_t i = 1; i <= n; ++i)
        curves.push_back(
            gaussian_moment_curve(p_grid, std::sqrt(mspec.variance_at(i))));
      return MomentTable(std::move(curves));
    }
  }
  throw DomainError("multiplier_grid_table: unsupported family");
}

}  // namespace martbounds
