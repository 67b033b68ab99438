#include "martbounds/verification.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace martbounds {

VerifyConfig VerifyConfig::preset(const std::string& name) {
  VerifyConfig cfg;
  if (name == "default") return cfg;
  if (name == "quick") {
    cfg.reps = 4000;
    cfg.table_reps = 8000;
    cfg.ns = {16, 128};
    cfg.ps = {2.0, 3.0, 4.0};
    return cfg;
  }
  if (name == "medium") {
    cfg.reps = 20000;
    cfg.table_reps = 40000;
    cfg.ns = {16, 256};
    return cfg;
  }
  throw DomainError("unknown verify preset: " + name);
}

std::string VerifyConfig::to_json() const {
  nlohmann::json gens = nlohmann::json::array();
  for (auto g : generators) gens.push_back(to_string(g));
  nlohmann::json mults = nlohmann::json::array();
  for (auto m : multipliers) mults.push_back(to_string(m));
  nlohmann::json j{{"seed", seed},
                   {"reps", reps},
                   {"table_reps", table_reps},
                   {"ps", ps},
                   {"ns", ns},
                   {"generators", gens},
                   {"multipliers", mults},
                   {"multiplier_bound", multiplier_bound},
                   {"threshold", threshold},
                   {"include_transform", include_transform}};
  return j.dump();
}

VerifyConfig VerifyConfig::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  VerifyConfig cfg;
  cfg.seed = j.value("seed", cfg.seed);
  cfg.reps = j.value("reps", cfg.reps);
  cfg.table_reps = j.value("table_reps", cfg.table_reps);
  if (j.contains("ps")) cfg.ps = j["ps"].get<std::vector<double>>();
  if (j.contains("ns")) cfg.ns = j["ns"].get<std::vector<std::size_t>>();
  if (j.contains("generators")) {
    cfg.generators.clear();
    for (const auto& g : j["generators"])
      cfg.generators.push_back(generator_from_string(g.get<std::string>()));
  }
  if (j.contains("multipliers")) {
    cfg.multipliers.clear();
    for (const auto& m : j["multipliers"])
      cfg.multipliers.push_back(multiplier_from_string(m.get<std::string>()));
  }
  cfg.multiplier_bound = j.value("multiplier_bound", cfg.multiplier_bound);
  cfg.threshold = j.value("threshold", cfg.threshold);
  cfg.include_transform = j.value("include_transform", cfg.include_transform);
  return cfg;
}

GeneratorSpec make_generator(GeneratorFamily family, std::size_t n,
                             std::size_t reps, std::uint64_t seed) {
  GeneratorSpec g;
  g.family = family;
  g.n = n;
  g.reps = reps;
  g.seed = seed;
  return g;
}

MultiplierSpec make_multiplier(MultiplierFamily family, double bound_v) {
  MultiplierSpec m;
  m.family = family;
  m.bound_v = bound_v;
  return m;
}

namespace {

class ThreadCap {
 public:
  explicit ThreadCap(int threads) {
#ifdef _OPENMP
    if (threads > 0) {
      saved_ = omp_get_max_threads();
      omp_set_num_threads(threads);
    }
#else
    (void)threads;
#endif
  }
  ~ThreadCap() {
#ifdef _OPENMP
    if (saved_ > 0) omp_set_num_threads(saved_);
#endif
  }

 private:
  int saved_ = 0;
};

// Per-index p-norms for the martingale bound: exact closed forms everywhere
// except odd p for the predictable_variance family, which is estimated from
// an independent stream.
std::vector<double> index_pnorms(const GeneratorSpec& g, double p,
                                 std::size_t table_reps) {
  if (g.family == GeneratorFamily::PredictableVariance &&
      p != 2.0 * std::floor(p / 2.0))
    return empirical_index_pnorms(g, p, table_reps);
  return exact_index_pnorms(g, p);
}

}  // namespace

VerifyReport run_verification(const VerifyConfig& cfg) {
  ThreadCap cap(cfg.threads);
  VerifyReport out;
  out.config = cfg;
  const std::vector<double> grid = default_p_grid();
  for (GeneratorFamily gf : cfg.generators) {
    for (std::size_t n : cfg.ns) {
      const GeneratorSpec gspec = make_generator(gf, n, cfg.reps, cfg.seed);
      const PathBatch batch = generate(gspec, /*materialize_if_small=*/false);
      for (double p : cfg.ps) {
        const auto pnorms = index_pnorms(gspec, p, cfg.table_reps);
        const double bound = bound_martingale(pnorms, p);
        BoundReport rep = adjudicate(batch, bound, p, Target::Sum,
                                     cfg.threshold);
        rep.name = "martingale";
        out.reports.push_back(std::move(rep));
      }
      if (!cfg.include_transform) continue;
      const MomentTable xi_table = xi_grid_table(gspec, grid);
      for (MultiplierFamily mf : cfg.multipliers) {
        const MultiplierSpec mspec =
            make_multiplier(mf, cfg.multiplier_bound);
        const PathBatch with_mult = attach_multipliers(batch, mspec);
        const MomentTable b_table = multiplier_grid_table(mspec, n, grid);
        for (double p : cfg.ps) {
          const OptimizeResult opt =
              optimize_quadruple(b_table, xi_table, p, n);
          BoundReport rep = adjudicate(with_mult, opt.value, p,
                                       Target::Transform, cfg.threshold);
          rep.name = "transform";
          rep.quadruple = opt.quad;
          out.reports.push_back(std::move(rep));
        }
      }
    }
  }
  for (const auto& r : out.reports) {
    if (r.verdict == Verdict::Violated) ++out.violations;
    if (r.verdict == Verdict::Inconclusive) ++out.inconclusive;
  }
  return out;
}

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  j["config"] = nlohmann::json::parse(config.to_json());
  nlohmann::json reps = nlohmann::json::array();
  for (const auto& r : reports) reps.push_back(nlohmann::json::parse(r.to_json()));
  j["reports"] = std::move(reps);
  j["violations"] = violations;
  j["inconclusive"] = inconclusive;
  return j.dump(2);
}

void VerifyReport::save_csv(std::ostream& os) const {
  os << "name,generator,p,n,bound,empirical,halfwidth,verdict\n";
  os.precision(17);
  for (const auto& r : reports)
    os << r.name << "," << r.generator << "," << r.p << "," << r.n << ","
       << r.bound << "," << r.empirical << "," << r.halfwidth << ","
       << to_string(r.verdict) << "\n";
}

P2Sharpness p2_sharpness(std::uint64_t seed, std::size_t n, std::size_t reps) {
  const GeneratorSpec g =
      make_generator(GeneratorFamily::Rademacher, n, reps, seed);
  const PathBatch batch = generate(g, /*materialize_if_small=*/false);
  const NormEstimate est = empirical_norm_at(batch, 2.0, Target::Sum);
  P2Sharpness out;
  out.empirical = est.value;
  out.halfwidth = est.halfwidth;
  out.bound = bound_martingale(exact_index_pnorms(g, 2.0), 2.0);
  out.ratio = out.empirical / out.bound;
  return out;
}

namespace {

TailFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  TailFit fit;
  const std::size_t n = x.size();
  if (n < 2) return fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double nd = static_cast<double>(n);
  const double denom = nd * sxx - sx * sx;
  if (denom == 0.0) return fit;
  fit.slope = (nd * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / nd;
  double ss_res = 0.0, ss_tot = 0.0;
  const double ybar = sy / nd;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += e * e;
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
  return fit;
}

}  // namespace

TailPipelineResult run_tail_pipeline(std::uint64_t seed, std::size_t n,
                                     std::size_t reps,
                                     const std::vector<double>& u_grid) {
  const GeneratorSpec g =
      make_generator(GeneratorFamily::Gaussian, n, reps, seed);
  const MultiplierSpec m =
      make_multiplier(MultiplierFamily::GaussianPredictable, 0.0);
  const PathBatch batch =
      attach_multipliers(generate(g, /*materialize_if_small=*/false), m);

  // Exact Gaussian moment tables, wide enough for the optimizer's alpha*p.
  const std::vector<double> wide_grid = log_spaced(2.0, 256.0, 96);
  const MomentTable xi_table = xi_grid_table(
      make_generator(GeneratorFamily::Gaussian, n, 2, seed), wide_grid);
  const MomentTable b_table = multiplier_grid_table(m, n, wide_grid);

  TailPipelineResult out{
      theta_function(b_table, xi_table, n, log_spaced(2.0, 64.0, 48)),
      {}, {}, {}, {}, 0, false, {}, {}};
  const TailEstimate tail = empirical_tail(batch, u_grid);
  const double resolvable = 10.0 / static_cast<double>(reps);
  bool ok = true;
  std::vector<double> xs_sqrt, xs_lin, ys;
  for (std::size_t i = 0; i < tail.u.size(); ++i) {
    const double u = tail.u[i];
    const double b = u > 0.0 ? tail_bound(out.theta, 1.0, u) : 1.0;
    out.u.push_back(u);
    out.bound.push_back(b);
    out.survival.push_back(tail.survival[i]);
    out.wilson_hi.push_back(tail.hi[i]);
    if (tail.survival[i] >= resolvable) {
      ++out.compared;
      if (tail.survival[i] > b) ok = false;
      if (u > 0.0 && tail.survival[i] > 0.0 && tail.survival[i] < 0.5) {
        xs_sqrt.push_back(std::sqrt(u));
        xs_lin.push_back(u);
        ys.push_back(-std::log(tail.survival[i]));
      }
    }
  }
  out.dominated = ok && out.compared > 0;
  out.sqrt_fit = fit_line(xs_sqrt, ys);
  out.linear_fit = fit_line(xs_lin, ys);
  return out;
}

}  // namespace martbounds
