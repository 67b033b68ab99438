#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "martbounds/entropy.hpp"
#include "martbounds/sharpness.hpp"
#include "martbounds/verification.hpp"

namespace py = pybind11;
using namespace martbounds;

namespace {

GeneratorSpec build_generator(const std::string& family, std::size_t n,
                              std::size_t reps, std::uint64_t seed) {
  return make_generator(generator_from_string(family), n, reps, seed);
}

MultiplierSpec build_multiplier(const std::string& family, double bound_v) {
  return make_multiplier(multiplier_from_string(family), bound_v);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "moment and tail bounds for martingales and martingale transforms";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

  py::class_<PsiFunction>(m, "PsiFunction")
      .def_static("grid", &PsiFunction::grid, py::arg("p"), py::arg("value"),
                  py::arg("a") = kInf)
      .def_static("psi_r", &PsiFunction::psi_r, py::arg("r"))
      .def_static("psi_sub2", &PsiFunction::psi_sub2, py::arg("a") = kInf)
      .def("__call__", &PsiFunction::operator())
      .def("to_json", &PsiFunction::to_json)
      .def_static("from_json", &PsiFunction::from_json);

  py::class_<MomentCurve>(m, "MomentCurve")
      .def(py::init<std::vector<double>, std::vector<double>,
                    std::optional<double>>(),
           py::arg("p"), py::arg("value"), py::arg("sup") = std::nullopt)
      .def("at", &MomentCurve::at)
      .def_property_readonly("p", &MomentCurve::p)
      .def_property_readonly("value", &MomentCurve::value);

  py::class_<MomentTable>(m, "MomentTable")
      .def(py::init<std::vector<MomentCurve>>())
      .def_static("constant", &MomentTable::constant)
      .def_property_readonly("horizon", &MomentTable::horizon);

  py::class_<HolderQuadruple>(m, "HolderQuadruple")
      .def_static("from_inverses", &HolderQuadruple::from_inverses)
      .def_readonly("alpha", &HolderQuadruple::alpha)
      .def_readonly("beta", &HolderQuadruple::beta)
      .def_readonly("lam", &HolderQuadruple::lambda)
      .def_readonly("mu", &HolderQuadruple::mu);

  m.def("default_p_grid", &default_p_grid);
  m.def("gls_norm", &gls_norm);
  m.def("young_fenchel_upper", &young_fenchel_upper);
  m.def("tail_bound", &tail_bound);
  m.def("psi_lower_transform", &psi_lower_transform);
  m.def("natural_function", [](const std::vector<MomentCurve>& curves) {
    return natural_function(curves);
  });
  m.def("mixed_norm", &mixed_norm);
  m.def("empirical_moment_curve",
        [](const std::vector<double>& samples, const std::vector<double>& grid) {
          const EmpiricalCurve c = empirical_moment_curve(samples, grid);
          return py::make_tuple(c.curve, c.halfwidth, c.isotonic_adjustment);
        });
  m.def("gaussian_moment_curve", &gaussian_moment_curve, py::arg("p_grid"),
        py::arg("sigma") = 1.0);
  m.def("constant_moment_curve", &constant_moment_curve);
  m.def("two_point_moment_curve", &two_point_moment_curve);

  m.def("bound_martingale",
        py::overload_cast<const MomentTable&, double, std::size_t>(
            &bound_martingale));
  m.def("bound_transform", &bound_transform);
  m.def("optimize_quadruple",
        [](const MomentTable& b, const MomentTable& xi, double p,
           std::size_t n) {
          const OptimizeResult r = optimize_quadruple(b, xi, p, n);
          return py::make_tuple(r.quad, r.value);
        });
  m.def("bound_conditional_uniform", &bound_conditional_uniform);
  m.def("theta_function", &theta_function);
  m.def("bound_quadratic_characteristic", &bound_quadratic_characteristic);
  m.def("mp_bracket", [](double p) {
    const MpBracket b = mp_bracket(p);
    return py::make_tuple(b.lower, b.upper, b.ordered);
  });

  m.def("constant_c", &constant_c);
  m.def("riemann_zeta", &riemann_zeta);
  m.def("s_infinity_norm", [](double p) {
    const SNorm s = s_infinity_norm(p);
    return py::make_tuple(s.exact, s.gamma_surrogate);
  });
  m.def("limit_formula", &limit_formula);
  m.def("lower_bound_ratio",
        [](int p, int levels) {
          const SharpnessRatio r = lower_bound_ratio(p, levels);
          py::dict d;
          d["p"] = r.p;
          d["levels"] = r.levels;
          d["numerator"] = r.numerator;
          d["denominator"] = r.denominator;
          d["ratio"] = r.ratio;
          d["limit"] = r.limit;
          d["series_prefix"] = r.series_prefix;
          d["series_tail_bound"] = r.series_tail_bound;
          return d;
        },
        py::arg("p"), py::arg("levels"));

  py::class_<PathBatch>(m, "PathBatch")
      .def_readonly("scaled_s", &PathBatch::scaled_s)
      .def_readonly("scaled_w", &PathBatch::scaled_w);

  m.def("generate",
        [](const std::string& family, std::size_t n, std::size_t reps,
           std::uint64_t seed) {
          return generate(build_generator(family, n, reps, seed));
        },
        py::arg("family"), py::arg("n"), py::arg("reps"), py::arg("seed"));
  m.def("attach_multipliers",
        [](const PathBatch& batch, const std::string& family, double bound_v) {
          return attach_multipliers(batch, build_multiplier(family, bound_v));
        },
        py::arg("batch"), py::arg("family"), py::arg("bound_v") = 1.0);
  m.def("empirical_norm_at",
        [](const PathBatch& batch, double p, const std::string& target) {
          const NormEstimate e = empirical_norm_at(
              batch, p, target == "w" ? Target::Transform : Target::Sum);
          return py::make_tuple(e.value, e.halfwidth);
        },
        py::arg("batch"), py::arg("p"), py::arg("target") = "s");
  m.def("adjudicate",
        [](const PathBatch& batch, double bound, double p,
           const std::string& target) {
          const BoundReport r = adjudicate(
              batch, bound, p, target == "w" ? Target::Transform : Target::Sum);
          return r.to_json();
        },
        py::arg("batch"), py::arg("bound"), py::arg("p"),
        py::arg("target") = "s");
  m.def("run_verification",
        [](const std::string& preset, std::uint64_t seed, std::size_t reps) {
          VerifyConfig cfg = VerifyConfig::preset(preset);
          cfg.seed = seed;
          if (reps > 0) cfg.reps = reps;
          const VerifyReport rep = run_verification(cfg);
          return py::make_tuple(rep.violations, rep.inconclusive,
                                rep.reports.size(), rep.to_json());
        },
        py::arg("preset") = "quick", py::arg("seed") = 7,
        py::arg("reps") = 0);

  m.def("holder_condition", &holder_condition);
  py::class_<AnalyticEntropyModel>(m, "EntropyModel")
      .def_static("power", &AnalyticEntropyModel::power)
      .def_static("log_law", &AnalyticEntropyModel::log_law, py::arg("q"),
                  py::arg("offset") = 0.0)
      .def_static("constant", &AnalyticEntropyModel::constant)
      .def("__call__", &AnalyticEntropyModel::operator());
  m.def("integral_dudley",
        [](const AnalyticEntropyModel& model) {
          const ConvergenceReport r = integral_dudley(model);
          return py::make_tuple(to_string(r.verdict), r.value);
        });
  m.def("integral_pisier",
        [](const AnalyticEntropyModel& model, double r) {
          const ConvergenceReport rep = integral_pisier(model, r);
          return py::make_tuple(to_string(rep.verdict), rep.value);
        });
  m.def("integral_gls",
        [](const PsiFunction& psi, const AnalyticEntropyModel& model) {
          const ConvergenceReport rep = integral_gls(psi, model);
          return py::make_tuple(to_string(rep.verdict), rep.value);
        });
}
