#include "martbounds/mixed_norms.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace martbounds {

MomentTable::MomentTable(std::vector<MomentCurve> curves)
    : curves_(std::move(curves)) {
  if (curves_.empty()) throw DomainError("MomentTable: empty table");
  const auto& grid = curves_.front().p();
  for (const auto& c : curves_)
    if (c.p() != grid)
      throw DomainError("MomentTable: curves must share one p-grid");
}

MomentTable MomentTable::constant(const MomentCurve& curve, std::size_t n) {
  if (n == 0) throw DomainError("MomentTable: empty table");
  return MomentTable(std::vector<MomentCurve>(n, curve));
}

void MomentTable::save_csv(std::ostream& os) const {
  os << "i,p,value\n";
  os.precision(17);
  for (std::size_t i = 0; i < curves_.size(); ++i)
    for (std::size_t j = 0; j < curves_[i].size(); ++j)
      os << (i + 1) << "," << curves_[i].p()[j] << "," << curves_[i].value()[j]
         << "\n";
}

MomentTable MomentTable::load_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw DomainError("MomentTable: empty CSV");
  std::map<std::size_t, std::pair<std::vector<double>, std::vector<double>>>
      rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b, c;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') ||
        !std::getline(row, c, ','))
      throw DomainError("MomentTable: malformed CSV row: " + line);
    auto& entry = rows[std::stoul(a)];
    entry.first.push_back(std::stod(b));
    entry.second.push_back(std::stod(c));
  }
  std::vector<MomentCurve> curves;
  curves.reserve(rows.size());
  for (auto& [i, pv] : rows)
    curves.emplace_back(std::move(pv.first), std::move(pv.second));
  return MomentTable(std::move(curves));
}

double power_mean(std::span<const double> values, double lambda) {
  if (!(lambda >= 1.0)) throw DomainError("power_mean: lambda must be >= 1");
  if (values.empty()) throw DomainError("power_mean: empty values");
  if (lambda == kInf) {
    double m = 0.0;
    for (double v : values) m = std::max(m, v);
    return m;
  }
  std::vector<double> powered(values.size());
  bool infinite = false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == kInf) infinite = true;
    powered[i] = abspow(values[i], lambda);
  }
  if (infinite) return kInf;
  const double mean = pairwise_sum(powered) / static_cast<double>(values.size());
  return std::pow(mean, 1.0 / lambda);
}

double mixed_norm(const MomentTable& table, double p, double lambda,
                  std::size_t n) {
  if (!(lambda >= 1.0)) throw DomainError("mixed_norm: lambda must be >= 1");
  if (n == 0 || n > table.horizon())
    throw DomainError("mixed_norm: n outside the stored horizon");
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i)
    vals[i] = (p == kInf) ? table.curve(i).at_inf() : table.curve(i).at(p);
  return power_mean(vals, lambda);
}

double mixed_norm_horizon_sup(const MomentTable& table, double p,
                              double lambda) {
  double best = 0.0;
  for (std::size_t n = 1; n <= table.horizon(); ++n)
    best = std::max(best, mixed_norm(table, p, lambda, n));
  return best;
}

void SampleMatrix::validate() const {
  if (reps < 2) throw DomainError("SampleMatrix: need reps >= 2");
  if (data.size() != reps * n)
    throw DomainError("SampleMatrix: data size mismatch");
  for (double x : data)
    if (!std::isfinite(x))
      throw DomainError("SampleMatrix: non-finite sample");
}

void SampleMatrix::save(const std::string& path) const {
  validate();
  std::ofstream bin(path, std::ios::binary);
  if (!bin) throw std::runtime_error("SampleMatrix: cannot write " + path);
  bin.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(double)));
  nlohmann::json j{{"n", n}, {"reps", reps}, {"seed", seed},
                   {"generator", generator}};
  std::ofstream side(path + ".json");
  side << j.dump(2) << "\n";
}

SampleMatrix SampleMatrix::load(const std::string& path) {
  std::ifstream side(path + ".json");
  if (!side) throw std::runtime_error("SampleMatrix: missing sidecar for " + path);
  nlohmann::json j;
  side >> j;
  SampleMatrix m;
  m.n = j.at("n").get<std::size_t>();
  m.reps = j.at("reps").get<std::size_t>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.generator = j.at("generator").get<std::string>();
  m.data.resize(m.reps * m.n);
  std::ifstream bin(path, std::ios::binary);
  if (!bin) throw std::runtime_error("SampleMatrix: cannot read " + path);
  bin.read(reinterpret_cast<char*>(m.data.data()),
           static_cast<std::streamsize>(m.data.size() * sizeof(double)));
  if (bin.gcount() !=
      static_cast<std::streamsize>(m.data.size() * sizeof(double)))
    throw std::runtime_error("SampleMatrix: truncated payload in " + path);
  m.validate();
  return m;
}

EmpiricalCurve empirical_moment_curve(std::span<const double> samples,
                                      const std::vector<double>& p_grid,
                                      double z) {
  if (samples.size() < 2)
    throw DomainError("empirical_moment_curve: need at least 2 samples");
  for (double x : samples)
    if (!std::isfinite(x))
      throw DomainError("empirical_moment_curve: non-finite sample");
  const double r = static_cast<double>(samples.size());
  std::vector<double> value(p_grid.size()), hw(p_grid.size());
  std::vector<double> powered(samples.size());
  for (std::size_t j = 0; j < p_grid.size(); ++j) {
    const double p = p_grid[j];
    for (std::size_t i = 0; i < samples.size(); ++i)
      powered[i] = abspow(samples[i], p);
    const double mean = pairwise_sum(powered) / r;
    double ss = 0.0;
    for (double x : powered) ss += (x - mean) * (x - mean);
    const double se = std::sqrt(ss / (r - 1.0) / r);
    value[j] = std::pow(mean, 1.0 / p);
    // Delta method on the p-th moment.
    hw[j] = mean > 0.0
                ? z * se * std::pow(mean, 1.0 / p - 1.0) / p
                : 0.0;
  }
  EmpiricalCurve out{MomentCurve({2.0, 3.0}, {0.0, 0.0}), {}, 0.0};
  const double adj = isotonic_nondecreasing(value);
  out.curve = MomentCurve(p_grid, std::move(value));
  out.isotonic_adjustment = adj;
  if (samples.size() >= 100) out.halfwidth = std::move(hw);
  return out;
}

PsiFunction natural_function(std::span<const MomentCurve> curves) {
  if (curves.empty()) throw DomainError("natural_function: empty family");
  const auto& grid = curves.front().p();
  for (const auto& c : curves)
    if (c.p() != grid)
      throw DomainError("natural_function: curves must share one p-grid");
  std::vector<double> sup(grid.size(), 0.0);
  for (const auto& c : curves)
    for (std::size_t j = 0; j < grid.size(); ++j)
      sup[j] = std::max(sup[j], c.value()[j]);
  for (double& s : sup)
    if (!(s > 0.0)) s = 1e-300;  // psi values must stay positive
  return PsiFunction::grid(grid, std::move(sup));
}

MomentCurve constant_moment_curve(const std::vector<double>& p_grid,
                                  double c) {
  return MomentCurve(p_grid, std::vector<double>(p_grid.size(), c), c);
}

double gaussian_abs_norm(double q, double sigma) {
  // E|N(0,1)|^q = 2^{q/2} Gamma((q+1)/2) / sqrt(pi)
  const double log_moment = 0.5 * q * std::log(2.0) +
                            std::lgamma(0.5 * (q + 1.0)) -
                            0.5 * std::log(3.14159265358979323846);
  return sigma * std::exp(log_moment / q);
}

MomentCurve gaussian_moment_curve(const std::vector<double>& p_grid,
                                  double sigma) {
  std::vector<double> v(p_grid.size());
  for (std::size_t j = 0; j < p_grid.size(); ++j)
    v[j] = gaussian_abs_norm(p_grid[j], sigma);
  return MomentCurve(p_grid, std::move(v));
}

MomentCurve two_point_moment_curve(const std::vector<double>& p_grid, double a,
                                   double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw DomainError("two_point_moment_curve: need a, b > 0");
  std::vector<double> v(p_grid.size());
  const double top = std::max(a, b);
  for (std::size_t j = 0; j < p_grid.size(); ++j) {
    const double q = p_grid[j];
    // Factor out the larger point for stability at large q.
    const double s = (b * std::pow(a / top, q) + a * std::pow(b / top, q)) /
                     (a + b);
    v[j] = top * std::pow(s, 1.0 / q);
  }
  return MomentCurve(p_grid, std::move(v), top);
}

}  // namespace martbounds
