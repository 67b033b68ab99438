#include "martbounds/gls.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace martbounds {

namespace {

void check_strictly_increasing(const std::vector<double>& p,
                               const char* what) {
  for (std::size_t i = 1; i < p.size(); ++i)
    if (!(p[i] > p[i - 1]))
      throw DomainError(std::string(what) + ": grid must strictly increase");
}

double interp_grid(const std::vector<double>& p, const std::vector<double>& v,
                   double q) {
  auto it = std::lower_bound(p.begin(), p.end(), q);
  if (it == p.begin()) return v.front();
  if (it == p.end()) return v.back();
  const std::size_t j = static_cast<std::size_t>(it - p.begin());
  return interp_loglog(p[j - 1], v[j - 1], p[j], v[j], q);
}

}  // namespace

PsiFunction PsiFunction::grid(std::vector<double> p, std::vector<double> value,
                              double a) {
  if (p.size() != value.size() || p.size() < 2)
    throw DomainError("PsiFunction: grid needs >= 2 matching points");
  check_strictly_increasing(p, "PsiFunction");
  if (p.front() < 2.0 - 1e-12)
    throw DomainError("PsiFunction: support starts at p = 2");
  for (double x : value)
    if (!(x > 0.0) || !std::isfinite(x))
      throw DomainError("PsiFunction: values must be finite and positive");
  if (!(a > 2.0)) throw DomainError("PsiFunction: need a > 2");
  PsiFunction f;
  f.kind_ = PsiKind::Grid;
  f.a_ = a;
  f.p_ = std::move(p);
  f.v_ = std::move(value);
  return f;
}

PsiFunction PsiFunction::psi_r(double r) {
  if (!(r >= 1.0)) throw DomainError("PsiFunction: psi_r needs r >= 1");
  PsiFunction f;
  f.kind_ = PsiKind::PsiR;
  f.r_ = r;
  f.a_ = kInf;
  return f;
}

PsiFunction PsiFunction::psi_sub2(double a) {
  if (!(a > 2.0)) throw DomainError("PsiFunction: need a > 2");
  PsiFunction f;
  f.kind_ = PsiKind::PsiSub2;
  f.a_ = a;
  return f;
}

double PsiFunction::operator()(double p) const {
  switch (kind_) {
    case PsiKind::PsiR:
      return std::fabs(p - r_) <= 1e-12 * std::max(1.0, std::fabs(r_)) ? 1.0
                                                                       : kInf;
    case PsiKind::PsiSub2:
      return (p >= 2.0 && p < a_) ? std::sqrt(p) : kInf;
    case PsiKind::Grid:
      if (p < p_.front() - 1e-12 || p > p_.back() + 1e-12 || p >= a_)
        return kInf;
      return interp_grid(p_, v_, std::clamp(p, p_.front(), p_.back()));
  }
  return kInf;
}

double PsiFunction::search_upper() const {
  switch (kind_) {
    case PsiKind::PsiR:
      return r_;
    case PsiKind::PsiSub2:
      return std::min(a_ == kInf ? kSearchCap : std::nexttoward(a_, 2.0),
                      kSearchCap);
    case PsiKind::Grid:
      return std::min(p_.back(), std::min(a_, kSearchCap));
  }
  return kSearchCap;
}

double PsiFunction::search_lower() const {
  if (kind_ == PsiKind::PsiR) return r_;
  if (kind_ == PsiKind::Grid) return p_.front();
  return 2.0;
}

std::string PsiFunction::to_json() const {
  nlohmann::json j;
  switch (kind_) {
    case PsiKind::Grid: {
      j["kind"] = "grid";
      nlohmann::json grid = nlohmann::json::array();
      for (std::size_t i = 0; i < p_.size(); ++i)
        grid.push_back({p_[i], v_[i]});
      j["grid"] = std::move(grid);
      break;
    }
    case PsiKind::PsiR:
      j["kind"] = "psi_r";
      j["r"] = r_;
      break;
    case PsiKind::PsiSub2:
      j["kind"] = "psi_sub2";
      break;
  }
  if (a_ == kInf)
    j["a"] = "inf";
  else
    j["a"] = a_;
  return j.dump();
}

PsiFunction PsiFunction::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  double a = kInf;
  if (j.contains("a") && !j["a"].is_string()) a = j["a"].get<double>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "psi_r") return psi_r(j.at("r").get<double>());
  if (kind == "psi_sub2") return psi_sub2(a);
  if (kind == "grid") {
    std::vector<double> p, v;
    for (const auto& pair : j.at("grid")) {
      p.push_back(pair.at(0).get<double>());
      v.push_back(pair.at(1).get<double>());
    }
    return grid(std::move(p), std::move(v), a);
  }
  throw DomainError("PsiFunction: unknown kind \"" + kind + "\"");
}

MomentCurve::MomentCurve(std::vector<double> p, std::vector<double> value,
                         std::optional<double> sup)
    : p_(std::move(p)), v_(std::move(value)), sup_(sup) {
  if (p_.size() != v_.size() || p_.empty())
    throw DomainError("MomentCurve: mismatched or empty grid");
  check_strictly_increasing(p_, "MomentCurve");
  for (double x : v_)
    if (!std::isfinite(x) || x < 0.0)
      throw DomainError("MomentCurve: values must be finite and >= 0");
  for (std::size_t i = 1; i < v_.size(); ++i)
    if (v_[i] < v_[i - 1] * (1.0 - 1e-9) - 1e-300)
      throw DomainError("MomentCurve: values must be nondecreasing in p");
  if (sup_ && !(*sup_ >= v_.back() * (1.0 - 1e-9)))
    throw DomainError("MomentCurve: sup below top grid value");
}

double MomentCurve::at(double q) const {
  if (q < p_.front() - 1e-12) return kInf;
  if (q > p_.back() + 1e-12) return sup_ ? *sup_ : kInf;
  if (p_.size() == 1) return v_.front();
  return interp_grid(p_, v_, std::clamp(q, p_.front(), p_.back()));
}

double MomentCurve::at_inf() const { return sup_ ? *sup_ : kInf; }

void MomentCurve::save_csv(std::ostream& os) const {
  os << "p,value\n";
  os.precision(17);
  for (std::size_t i = 0; i < p_.size(); ++i)
    os << p_[i] << "," << v_[i] << "\n";
}

MomentCurve MomentCurve::load_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw DomainError("MomentCurve: empty CSV");
  std::vector<double> p, v;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ','))
      throw DomainError("MomentCurve: malformed CSV row: " + line);
    p.push_back(std::stod(a));
    v.push_back(std::stod(b));
  }
  return MomentCurve(std::move(p), std::move(v));
}

std::vector<double> default_p_grid() { return log_spaced(2.0, 64.0, 64); }

double gls_norm(const MomentCurve& curve, const PsiFunction& psi) {
  if (psi.kind() == PsiKind::PsiR) {
    const double m = curve.at(psi.r());
    if (m == kInf)
      throw DomainError("gls_norm: psi_r point outside the curve support");
    return m;
  }
  double best = -1.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double den = psi(curve.p()[i]);
    if (den == kInf) continue;  // ratio against +inf counts as zero
    best = std::max(best, curve.value()[i] / den);
  }
  if (best < 0.0) throw DomainError("gls_norm: disjoint supports");
  return best;
}

namespace {

// x log psi(x); +inf where psi is.
double psi_bar(const PsiFunction& psi, double x) {
  const double v = psi(x);
  if (v == kInf) return kInf;
  return x * std::log(v);
}

}  // namespace

double young_fenchel_upper(const PsiFunction& psi, double y) {
  if (psi.kind() == PsiKind::PsiR) return psi.r() * y;
  const double lo = std::max(2.0, psi.search_lower());
  const double hi = psi.search_upper();
  if (!(hi > lo))
    throw DomainError("young_fenchel_upper: psi lacks a nondegenerate support");
  auto objective = [&](double x) {
    const double pb = psi_bar(psi, x);
    return pb == kInf ? -kInf : x * y - pb;
  };
  const std::vector<double> xs = log_spaced(lo, hi, 512);
  std::size_t best = 0;
  double fbest = -kInf;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = objective(xs[i]);
    if (f > fbest) {
      fbest = f;
      best = i;
    }
  }
  if (fbest == -kInf)
    throw DomainError("young_fenchel_upper: psi infinite on the search range");
  // Divergence check: still climbing at the cap.
  if (best == xs.size() - 1 && hi >= kSearchCap * (1.0 - 1e-9)) {
    const double prev = objective(xs[xs.size() - 2]);
    if (fbest > prev + 1e-12 * (1.0 + std::fabs(prev))) return kInf;
  }
  const double a = xs[best == 0 ? 0 : best - 1];
  const double b = xs[std::min(best + 1, xs.size() - 1)];
  return std::max(fbest, golden_max(objective, a, b));
}

double tail_bound(const PsiFunction& psi, double gls_norm_value, double u) {
  if (!(u > 0.0)) throw DomainError("tail_bound: u must be positive");
  if (!(gls_norm_value > 0.0) || !std::isfinite(gls_norm_value))
    throw DomainError("tail_bound: norm must be finite and positive");
  const double y = std::log(u / gls_norm_value);
  const double star = young_fenchel_upper(psi, y);
  if (star == kInf) return 0.0;
  return std::min(1.0, 2.0 * std::exp(-star));
}

double psi_lower_transform(const PsiFunction& psi, double x) {
  if (psi.kind() == PsiKind::PsiR) {
    if (psi.r() < 2.0)
      throw DomainError("psi_lower_transform: psi_r point below p = 2");
    return x / psi.r();
  }
  const double p_hi = psi.search_upper();
  const double p_lo = std::max(2.0, psi.search_lower());
  if (!(p_hi > p_lo))
    throw DomainError("psi_lower_transform: psi lacks admissible points");
  const double y_min = 1.0 / p_hi;
  const double y_max = std::min(0.5, 1.0 / p_lo);
  auto objective = [&](double y) {
    const double v = psi(1.0 / y);
    return v == kInf ? kInf : x * y + std::log(v);
  };
  const std::vector<double> ys = log_spaced(y_min, y_max, 512);
  std::size_t best = 0;
  double fbest = kInf;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double f = objective(ys[i]);
    if (f < fbest) {
      fbest = f;
      best = i;
    }
  }
  if (fbest == kInf) return kInf;
  const double a = ys[best == 0 ? 0 : best - 1];
  const double b = ys[std::min(best + 1, ys.size() - 1)];
  const double yr = golden_min_arg(objective, a, b);
  return std::min(fbest, objective(yr));
}

}  // namespace martbounds
