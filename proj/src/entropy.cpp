#include "martbounds/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace martbounds {

void EntropyProfile::validate() const {
  if (eps.size() != h.size() || eps.size() < 2)
    throw DomainError("EntropyProfile: need >= 2 matching points");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0)) throw DomainError("EntropyProfile: eps must be > 0");
    if (!(h[i] >= 0.0) || !std::isfinite(h[i]))
      throw DomainError("EntropyProfile: H must be finite and >= 0");
    if (i > 0 && !(eps[i] < eps[i - 1]))
      throw DomainError("EntropyProfile: eps must strictly decrease");
    if (i > 0 && h[i] < h[i - 1] - 1e-12)
      throw DomainError("EntropyProfile: H must be nonincreasing in eps");
  }
}

void EntropyBracket::save_csv(std::ostream& os) const {
  os << "epsilon,H_upper,H_lower\n";
  os.precision(17);
  for (std::size_t i = 0; i < upper.eps.size(); ++i)
    os << upper.eps[i] << "," << upper.h[i] << "," << lower.h[i] << "\n";
}

EntropyBracket EntropyBracket::load_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw DomainError("EntropyBracket: empty CSV");
  EntropyBracket out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b, c;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') ||
        !std::getline(row, c, ','))
      throw DomainError("EntropyBracket: malformed CSV row: " + line);
    out.upper.eps.push_back(std::stod(a));
    out.upper.h.push_back(std::stod(b));
    out.lower.eps.push_back(std::stod(a));
    out.lower.h.push_back(std::stod(c));
  }
  out.upper.validate();
  out.lower.validate();
  return out;
}

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> dense,
                               bool check_triangle)
    : n_(n), d_(std::move(dense)) {
  if (n_ == 0 || d_.size() != n_ * n_)
    throw DomainError("DistanceMatrix: shape mismatch");
  double scale = 0.0;
  for (double x : d_) {
    if (!std::isfinite(x) || x < 0.0)
      throw DomainError("DistanceMatrix: entries must be finite and >= 0");
    scale = std::max(scale, x);
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (at(i, i) != 0.0)
      throw DomainError("DistanceMatrix: nonzero diagonal");
    for (std::size_t j = 0; j < i; ++j)
      if (std::fabs(at(i, j) - at(j, i)) > 1e-12 * std::max(1.0, scale))
        throw DomainError("DistanceMatrix: asymmetric entries");
  }
  if (check_triangle) {
    const double slack = 1e-9 * std::max(1.0, scale);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k)
          if (at(i, k) > at(i, j) + at(j, k) + slack)
            throw DomainError("DistanceMatrix: triangle inequality violated");
  }
}

DistanceMatrix natural_distance(std::size_t n_points,
                                std::span<const MomentCurve> pair_curves,
                                const PsiFunction& psi) {
  if (n_points == 0) throw DomainError("natural_distance: empty point set");
  if (pair_curves.size() != n_points * (n_points - 1) / 2)
    throw DomainError("natural_distance: missing pair curves");
  std::vector<double> dense(n_points * n_points, 0.0);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n_points; ++i)
    for (std::size_t j = i + 1; j < n_points; ++j, ++idx) {
      const double d = gls_norm(pair_curves[idx], psi);
      dense[i * n_points + j] = d;
      dense[j * n_points + i] = d;
    }
  return DistanceMatrix(n_points, std::move(dense));
}

EntropyBracket covering_entropy(const DistanceMatrix& dmat,
                                const std::vector<double>& eps_grid) {
  const std::size_t n = dmat.size();
  if (n == 0) throw DomainError("covering_entropy: empty point set");
  std::vector<double> grid = eps_grid;
  std::sort(grid.begin(), grid.end(), std::greater<double>());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.empty() || !(grid.back() > 0.0))
    throw DomainError("covering_entropy: eps grid must be positive");

  // Farthest-first traversal; radius[k] is the coverage radius with k+1
  // centers.
  std::vector<double> dist(n, kInf);
  std::vector<double> radius;
  std::size_t next = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t c = next;
    double worst = 0.0;
    next = 0;
    for (std::size_t i = 0; i < n; ++i) {
      dist[i] = std::min(dist[i], dmat.at(c, i));
      if (dist[i] > worst) {
        worst = dist[i];
        next = i;
      }
    }
    radius.push_back(worst);
  }

  EntropyBracket out;
  out.upper.provenance = EntropyProfile::Provenance::FromPoints;
  out.lower.provenance = EntropyProfile::Provenance::FromPoints;
  std::vector<std::size_t> packed;
  double lower_running = 0.0;
  for (double eps : grid) {
    std::size_t cover = n;
    for (std::size_t k = 0; k < radius.size(); ++k)
      if (radius[k] <= eps) {
        cover = k + 1;
        break;
      }
    out.upper.eps.push_back(eps);
    out.upper.h.push_back(std::log(static_cast<double>(cover)));

    // Greedy 2eps-separated subset; its size lower-bounds N(eps).
    packed.clear();
    for (std::size_t i = 0; i < n; ++i) {
      bool far = true;
      for (std::size_t j : packed)
        if (dmat.at(i, j) <= 2.0 * eps) {
          far = false;
          break;
        }
      if (far) packed.push_back(i);
    }
    lower_running =
        std::max(lower_running, std::log(static_cast<double>(packed.size())));
    out.lower.eps.push_back(eps);
    out.lower.h.push_back(lower_running);
  }
  out.upper.validate();
  out.lower.validate();
  return out;
}

PsiFunction tau_function(std::span<const MomentTable> tables,
                         std::span<const std::size_t> horizons,
                         const std::vector<double>& p_grid) {
  if (tables.empty() || horizons.empty())
    throw DomainError("tau_function: empty family");
  std::vector<double> sup(p_grid.size(), 0.0);
  for (const auto& table : tables)
    for (std::size_t nn : horizons) {
      const MomentCurve curve = martingale_bound_curve(table, nn, p_grid);
      for (std::size_t j = 0; j < p_grid.size(); ++j)
        sup[j] = std::max(sup[j], curve.value()[j]);
    }
  for (double& s : sup)
    if (!(s > 0.0)) s = 1e-300;
  return PsiFunction::grid(p_grid, std::move(sup));
}

AnalyticEntropyModel AnalyticEntropyModel::power(double c, double s) {
  if (!(c >= 0.0) || !(s > 0.0))
    throw DomainError("entropy model: power law needs c >= 0, s > 0");
  return {Kind::Power, c, s, 0.0};
}

AnalyticEntropyModel AnalyticEntropyModel::log_law(double q, double offset) {
  if (!(q >= 0.0)) throw DomainError("entropy model: log law needs q >= 0");
  return {Kind::Log, q, 0.0, offset};
}

AnalyticEntropyModel AnalyticEntropyModel::constant(double h) {
  if (!(h >= 0.0)) throw DomainError("entropy model: constant needs h >= 0");
  return {Kind::Constant, h, 0.0, 0.0};
}

double AnalyticEntropyModel::operator()(double eps) const {
  switch (kind) {
    case Kind::Power:
      return scale * std::pow(eps, -exponent);
    case Kind::Log:
      return std::max(0.0, scale * std::log(1.0 / eps) + offset);
    case Kind::Constant:
      return scale;
  }
  return 0.0;
}

std::string AnalyticEntropyModel::describe() const {
  std::ostringstream os;
  os.precision(6);
  switch (kind) {
    case Kind::Power:
      os << "power(c=" << scale << ",s=" << exponent << ")";
      break;
    case Kind::Log:
      os << "log(q=" << scale << ",c0=" << offset << ")";
      break;
    case Kind::Constant:
      os << "constant(h=" << scale << ")";
      break;
  }
  return os.str();
}

std::string to_string(IntegralVerdict v) {
  switch (v) {
    case IntegralVerdict::Converges:
      return "converges";
    case IntegralVerdict::Diverges:
      return "diverges";
    case IntegralVerdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::string ConvergenceReport::to_json() const {
  nlohmann::json j{{"criterion", criterion},
                   {"verdict", to_string(verdict)},
                   {"model", model},
                   {"fit_window", {fit_lo, fit_hi}},
                   {"residual", residual}};
  if (verdict == IntegralVerdict::Converges) {
    j["value"] = value;
    j["error"] = error;
  }
  return j.dump();
}

namespace {

// All three criteria are integrals of exp(L(H(eps))) over (0, 1]; L keeps
// the integrand in log space so divergent models cannot overflow.
using LogIntegrand = std::function<double(double /*H*/)>;

double log_integrand_at(const LogIntegrand& L, const AnalyticEntropyModel& m,
                        double eps) {
  return L(m(eps));
}

// Growth exponent of the integrand near eps = 0 against eps^{-1}.
IntegralVerdict classify(const LogIntegrand& L,
                         const AnalyticEntropyModel& m) {
  const double ln2 = std::log(2.0);
  double prev = log_integrand_at(L, m, std::ldexp(1.0, -34));
  double slope_mid = 0.0, slope_last = 0.0;
  for (int k = 35; k <= 44; ++k) {
    const double cur = log_integrand_at(L, m, std::ldexp(1.0, -k));
    if (cur == -kInf) return IntegralVerdict::Converges;  // vanishing head
    if (!std::isfinite(cur)) return IntegralVerdict::Diverges;
    const double slope = (cur - prev) / ln2;
    if (k == 40) slope_mid = slope;
    if (k == 44) slope_last = slope;
    prev = cur;
  }
  if (slope_last > slope_mid + 1e-3 && slope_last > 1.0)
    return IntegralVerdict::Diverges;  // superlinear growth
  if (slope_last < 1.0 - 1e-6) return IntegralVerdict::Converges;
  if (slope_last > 1.0 + 1e-6) return IntegralVerdict::Diverges;
  return IntegralVerdict::Inconclusive;
}

// integral over (0, hi] of exp(L(H(eps))) d eps via eps = e^{-t}.
double integrate_model(const LogIntegrand& L, const AnalyticEntropyModel& m,
                       double hi, double* err) {
  const double t0 = -std::log(hi);
  auto f = [&](double t) {
    const double le = L(m(std::exp(-t))) - t;
    return le < -745.0 ? 0.0 : std::exp(le);
  };
  double total = 0.0, last = 0.0;
  double t = t0;
  for (int seg = 0; seg < 400; ++seg) {
    last = integrate_adaptive(f, t, t + 1.0, 1e-13);
    total += last;
    t += 1.0;
    if (seg > 4 && last < 1e-14 * std::max(total, 1e-30)) break;
  }
  if (err != nullptr) *err = last + 1e-10 * total;
  return total;
}

struct FitOutcome {
  AnalyticEntropyModel model;
  double residual = kInf;
  double lo = 0.0, hi = 0.0;
  bool usable = false;
};

FitOutcome fit_profile_head(const EntropyProfile& profile) {
  profile.validate();
  FitOutcome out;
  const std::size_t n = profile.eps.size();
  const std::size_t window = std::max<std::size_t>(6, n / 4);
  if (n < 6) return out;
  const std::size_t lo_idx = n - std::min(window, n);
  std::vector<double> x, yh;
  for (std::size_t i = lo_idx; i < n; ++i) {
    x.push_back(std::log(1.0 / profile.eps[i]));
    yh.push_back(profile.h[i]);
  }
  out.lo = profile.eps.back();
  out.hi = profile.eps[lo_idx];
  const std::size_t m = x.size();
  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double t : v) s += t;
    return s / static_cast<double>(v.size());
  };
  auto regress = [&](const std::vector<double>& xs,
                     const std::vector<double>& ys, double* a, double* b) {
    const double xm = mean(xs), ym = mean(ys);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      num += (xs[i] - xm) * (ys[i] - ym);
      den += (xs[i] - xm) * (xs[i] - xm);
    }
    *b = den > 0.0 ? num / den : 0.0;
    *a = ym - *b * xm;
  };
  const double h_scale = std::max(1.0, std::fabs(yh.back()));
  auto rms_against = [&](const AnalyticEntropyModel& model) {
    double ss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double pred = model(std::exp(-x[i]));
      ss += (pred - yh[i]) * (pred - yh[i]);
    }
    return std::sqrt(ss / static_cast<double>(m)) / h_scale;
  };

  // Constant model.
  {
    const double hm = mean(yh);
    if (hm >= 0.0) {
      const AnalyticEntropyModel cm = AnalyticEntropyModel::constant(
          std::max(0.0, hm));
      const double r = rms_against(cm);
      if (r < out.residual) {
        out.residual = r;
        out.model = cm;
        out.usable = true;
      }
    }
  }
  // Log model: H = q log(1/eps) + c0.
  {
    double c0 = 0.0, q = 0.0;
    regress(x, yh, &c0, &q);
    if (q >= 0.0) {
      const AnalyticEntropyModel lm = AnalyticEntropyModel::log_law(q, c0);
      const double r = rms_against(lm);
      if (r < out.residual) {
        out.residual = r;
        out.model = lm;
        out.usable = true;
      }
    }
  }
  // Power model: log H = log c + s log(1/eps), needs positive H.
  {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < m; ++i)
      if (yh[i] > 0.0) {
        xs.push_back(x[i]);
        ys.push_back(std::log(yh[i]));
      }
    if (xs.size() >= 4) {
      double lc = 0.0, s = 0.0;
      regress(xs, ys, &lc, &s);
      if (s > 0.0) {
        const AnalyticEntropyModel pm =
            AnalyticEntropyModel::power(std::exp(lc), s);
        const double r = rms_against(pm);
        if (r < out.residual) {
          out.residual = r;
          out.model = pm;
          out.usable = true;
        }
      }
    }
  }
  if (out.residual > 0.1) out.usable = false;
  return out;
}

ConvergenceReport evaluate_model(const std::string& criterion,
                                 const LogIntegrand& L,
                                 const AnalyticEntropyModel& model) {
  ConvergenceReport rep;
  rep.criterion = criterion;
  rep.model = "analytic:" + model.describe();
  rep.verdict = classify(L, model);
  if (rep.verdict == IntegralVerdict::Converges)
    rep.value = integrate_model(L, model, 1.0, &rep.error);
  return rep;
}

ConvergenceReport evaluate_profile(const std::string& criterion,
                                   const LogIntegrand& L,
                                   const EntropyProfile& profile) {
  ConvergenceReport rep;
  rep.criterion = criterion;
  const FitOutcome fit = fit_profile_head(profile);
  rep.residual = fit.residual == kInf ? -1.0 : fit.residual;
  rep.fit_lo = fit.lo;
  rep.fit_hi = fit.hi;
  if (!fit.usable) {
    rep.model = "none";
    rep.verdict = IntegralVerdict::Inconclusive;
    return rep;
  }
  rep.model = "fitted:" + fit.model.describe();
  rep.verdict = classify(L, fit.model);
  if (rep.verdict != IntegralVerdict::Converges) return rep;

  // Trapezoid over the observed grid, model head below it, boundary-value
  // extension up to eps = 1.
  const auto& eps = profile.eps;
  const auto& h = profile.h;
  auto g = [&](double lh) { return lh < -745.0 ? 0.0 : std::exp(lh); };
  double grid_part = 0.0;
  for (std::size_t i = 1; i < eps.size(); ++i)
    grid_part += 0.5 * (g(L(h[i])) + g(L(h[i - 1]))) * (eps[i - 1] - eps[i]);
  double head_err = 0.0;
  const double head = integrate_model(L, fit.model, eps.back(), &head_err);
  double extension = 0.0;
  if (eps.front() < 1.0) extension = g(L(h.front())) * (1.0 - eps.front());
  rep.value = grid_part + head + extension;
  rep.error = head_err + 1e-6 * rep.value;
  return rep;
}

LogIntegrand gls_integrand(const PsiFunction& psi) {
  return [psi](double h) { return psi_lower_transform(psi, std::log(2.0) + h); };
}

LogIntegrand pisier_integrand(double r) {
  if (!(r >= 1.0)) throw DomainError("integral_pisier: requires r >= 1");
  return [r](double h) { return h / r; };
}

LogIntegrand dudley_integrand() {
  return [](double h) { return h > 0.0 ? 0.5 * std::log(h) : -kInf; };
}

}  // namespace

ConvergenceReport integral_gls(const PsiFunction& psi,
                               const AnalyticEntropyModel& model) {
  return evaluate_model("gls", gls_integrand(psi), model);
}

ConvergenceReport integral_gls(const PsiFunction& psi,
                               const EntropyProfile& profile) {
  return evaluate_profile("gls", gls_integrand(psi), profile);
}

ConvergenceReport integral_pisier(const AnalyticEntropyModel& model,
                                  double r) {
  return evaluate_model("pisier", pisier_integrand(r), model);
}

ConvergenceReport integral_pisier(const EntropyProfile& profile, double r) {
  return evaluate_profile("pisier", pisier_integrand(r), profile);
}

ConvergenceReport integral_dudley(const AnalyticEntropyModel& model) {
  return evaluate_model("dudley", dudley_integrand(), model);
}

ConvergenceReport integral_dudley(const EntropyProfile& profile) {
  return evaluate_profile("dudley", dudley_integrand(), profile);
}

bool holder_condition(int d, double alpha, double r) {
  if (d < 1) throw DomainError("holder_condition: d must be >= 1");
  if (!(alpha > 0.0) || alpha > 1.0)
    throw DomainError("holder_condition: alpha must lie in (0, 1]");
  if (!(r >= 1.0)) throw DomainError("holder_condition: r must be >= 1");
  return r > static_cast<double>(d) / alpha;
}

}  // namespace martbounds
