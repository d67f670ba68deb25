#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polymap/analysis.hpp"
#include "polymap/bifurcation.hpp"
#include "polymap/errors.hpp"
#include "polymap/io.hpp"

namespace py = pybind11;
using namespace polymap;

PYBIND11_MODULE(_polymap, m) {
    m.doc() = "stability, bifurcation and chaos analysis for real polynomial maps";

    py::register_exception<Error>(m, "PolymapError");

    // ---- polynomial core ----
    py::class_<Polynomial>(m, "Polynomial")
        .def(py::init<std::vector<double>>(), py::arg("coeffs"))
        .def_static("from_roots", &Polynomial::from_roots, py::arg("leading"), py::arg("roots"))
        .def_property_readonly("coeffs", &Polynomial::coeffs)
        .def_property_readonly("degree", &Polynomial::degree)
        .def("__call__", &Polynomial::operator(), py::arg("x"))
        .def("derivative", &Polynomial::derivative, py::arg("order") = 1)
        .def("compose", &Polynomial::compose, py::arg("inner"))
        .def("__repr__", [](const Polynomial& p) { return "Polynomial(" + p.to_string() + ")"; });

    py::class_<RealRoot>(m, "RealRoot")
        .def_readonly("value", &RealRoot::value)
        .def_readonly("multiplicity", &RealRoot::multiplicity);

    py::class_<RootSet>(m, "RootSet")
        .def_readonly("real_roots", &RootSet::real_roots)
        .def_readonly("complex_pair_count", &RootSet::complex_pair_count)
        .def_readonly("residual", &RootSet::residual);

    m.def("real_roots", &real_roots, py::arg("p"), py::arg("tol") = 1e-10);

    py::enum_<SchwarzianKind>(m, "SchwarzianKind")
        .value("Finite", SchwarzianKind::Finite)
        .value("NegInfinity", SchwarzianKind::NegInfinity)
        .value("Indeterminate", SchwarzianKind::Indeterminate);

    py::class_<SchwarzianValue>(m, "SchwarzianValue")
        .def_readonly("kind", &SchwarzianValue::kind)
        .def_readonly("value", &SchwarzianValue::value);

    m.def("schwarzian", &schwarzian, py::arg("f"), py::arg("x"));

    // ---- forms ----
    py::class_<GeneralMap>(m, "GeneralMap")
        .def_readonly("q", &GeneralMap::q)
        .def_property_readonly("degree", &GeneralMap::degree)
        .def("map_polynomial", &GeneralMap::map_polynomial)
        .def("eval", &GeneralMap::eval, py::arg("y"));

    py::class_<LinearFactorsMap>(m, "LinearFactorsMap")
        .def_readonly("s", &LinearFactorsMap::sign_s)
        .def_readonly("m_tilde", &LinearFactorsMap::m_tilde)
        .def_readonly("fixed_points", &LinearFactorsMap::fixed_points)
        .def("eval", &LinearFactorsMap::eval, py::arg("y"))
        .def("to_general", &LinearFactorsMap::to_general);

    py::class_<CanonicalMap>(m, "CanonicalMap")
        .def(py::init([](int degree, int s, std::vector<double> xs) {
                 CanonicalMap c;
                 c.degree_n = degree;
                 c.sign_s = s;
                 c.nonzero_fixed_points = std::move(xs);
                 return c;
             }),
             py::arg("degree"), py::arg("s"), py::arg("nonzero_fixed_points"))
        .def_readonly("degree", &CanonicalMap::degree_n)
        .def_readonly("s", &CanonicalMap::sign_s)
        .def_readonly("nonzero_fixed_points", &CanonicalMap::nonzero_fixed_points)
        .def("eval", &CanonicalMap::eval, py::arg("x"))
        .def("all_fixed_points", &CanonicalMap::all_fixed_points)
        .def("expanded", &CanonicalMap::expanded);

    py::class_<ConjugacyTransform>(m, "ConjugacyTransform")
        .def_readonly("scale", &ConjugacyTransform::scale)
        .def_readonly("offset", &ConjugacyTransform::offset)
        .def("apply", &ConjugacyTransform::apply, py::arg("x"))
        .def("invert", &ConjugacyTransform::invert, py::arg("y"));

    m.def("from_coefficients", &from_coefficients, py::arg("f"));
    m.def("to_linear_factors", &to_linear_factors, py::arg("g"), py::arg("tol") = 1e-10);
    m.def("to_canonical", &to_canonical, py::arg("lff"), py::arg("anchor_index") = 0);
    m.def("canonical_eval", &canonical_eval, py::arg("c"), py::arg("x"));
    m.def(
        "verify_conjugacy",
        [](const LinearFactorsMap& lff, const CanonicalMap& c, const ConjugacyTransform& t, int samples) {
            return verify_conjugacy(lff, c, t, samples).max_error;
        },
        py::arg("lff"), py::arg("c"), py::arg("t"), py::arg("sample_count") = 1000);
    m.def("pdf", &pdf, py::arg("c"), py::arg("k"));
    m.def("multiplier_fixed", &multiplier_fixed, py::arg("c"), py::arg("k"));

    // ---- stability ----
    py::enum_<StabilityKind>(m, "StabilityKind")
        .value("Attractor", StabilityKind::Attractor)
        .value("Repellor", StabilityKind::Repellor)
        .value("NonhyperbolicStable", StabilityKind::NonhyperbolicStable)
        .value("NonhyperbolicUnstable", StabilityKind::NonhyperbolicUnstable)
        .value("SemistableRight", StabilityKind::SemistableRight)
        .value("SemistableLeft", StabilityKind::SemistableLeft)
        .value("Indeterminate", StabilityKind::Indeterminate);

    py::class_<StabilityClass>(m, "StabilityClass")
        .def_readonly("kind", &StabilityClass::kind)
        .def_readonly("multiplier", &StabilityClass::multiplier)
        .def_readonly("pdf_value", &StabilityClass::pdf_value)
        .def("__repr__",
             [](const StabilityClass& s) { return "StabilityClass(" + to_string(s.kind) + ")"; });

    m.def("classify_fixed_point", &classify_fixed_point, py::arg("c"), py::arg("k"),
          py::arg("hyperbolicity_tol") = 1e-8);

    py::class_<TwoCycle>(m, "TwoCycle")
        .def_property_readonly("points",
                               [](const TwoCycle& t) { return std::pair<double, double>{t.points[0], t.points[1]}; })
        .def_readonly("multiplier", &TwoCycle::multiplier);

    m.def("cqm_two_cycle", &cqm_two_cycle, py::arg("x1"));
    m.def("cycle_multiplier", &cycle_multiplier, py::arg("c"), py::arg("orbit"), py::arg("closure_tol") = 1e-6);
    m.def("singer_bound", &singer_bound, py::arg("c"));
    m.def("sarkovskii_precedes", &sarkovskii_precedes, py::arg("k"), py::arg("l"));

    py::class_<BandTable>(m, "BandTable")
        .def_readonly("degree", &BandTable::degree)
        .def_readonly("thresholds", &BandTable::thresholds)
        .def_readonly("uncertainties", &BandTable::uncertainties)
        .def_readonly("b_inf", &BandTable::b_inf)
        .def_readonly("b_inf_uncertainty", &BandTable::b_inf_uncertainty);

    m.def("builtin_band_table", &builtin_band_table, py::arg("degree"),
          py::return_value_policy::reference);

    py::class_<RegionType>(m, "RegionType")
        .def_property_readonly("kind",
                               [](const RegionType& r) {
                                   switch (r.kind) {
                                       case RegionType::Kind::Outside: return "outside";
                                       case RegionType::Kind::TypeInfinity: return "infinity";
                                       default: return "type";
                                   }
                               })
        .def_readonly("k", &RegionType::k)
        .def_readonly("boundary", &RegionType::boundary)
        .def("rank", &RegionType::rank);

    m.def("band_lookup", &band_lookup, py::arg("table"), py::arg("pdf_value"));

    // ---- families ----
    py::class_<ParamExpr>(m, "ParamExpr")
        .def_static("parse", &ParamExpr::parse, py::arg("text"))
        .def("__call__",
             [](const ParamExpr& e, double lam) {
                 auto r = e.eval(lam);
                 if (!r.ok) throw Error(r.reason);
                 return r.value;
             })
        .def("pretty", &ParamExpr::pretty);

    py::class_<CanonicalFamily>(m, "CanonicalFamily")
        .def(py::init([](int degree, int s, std::vector<std::string> exprs, double lo, double hi,
                         std::string name) {
                 CanonicalFamily fam;
                 fam.degree = degree;
                 fam.sign_s = s;
                 for (const auto& e : exprs) fam.x_exprs.push_back(ParamExpr::parse(e));
                 fam.domain_lo = lo;
                 fam.domain_hi = hi;
                 fam.name = std::move(name);
                 return fam;
             }),
             py::arg("degree"), py::arg("s"), py::arg("fixed_points"), py::arg("domain_lo"),
             py::arg("domain_hi"), py::arg("name") = "")
        .def_readonly("degree", &CanonicalFamily::degree)
        .def_readonly("s", &CanonicalFamily::sign_s)
        .def_readonly("domain_lo", &CanonicalFamily::domain_lo)
        .def_readonly("domain_hi", &CanonicalFamily::domain_hi)
        .def_readonly("name", &CanonicalFamily::name);

    m.def("family_at", &family_at, py::arg("family"), py::arg("lam"));
    m.def(
        "preset",
        [](const std::string& name, py::object r, py::object b_expr) {
            PresetArgs args;
            if (!r.is_none()) args.r = r.cast<double>();
            if (!b_expr.is_none()) args.b_expr = b_expr.cast<std::string>();
            return preset(name, args);
        },
        py::arg("name"), py::arg("r") = py::none(), py::arg("b_expr") = py::none());
    m.def("preset_names", &preset_names);
    m.def("canonical_search_slice", &canonical_search_slice, py::arg("degree"));
    m.def("linspace", &linspace, py::arg("lo"), py::arg("hi"), py::arg("n"));

    py::class_<SeriesPoint>(m, "SeriesPoint")
        .def_readonly("lam", &SeriesPoint::lambda)
        .def_readonly("value", &SeriesPoint::value)
        .def_readonly("poisoned", &SeriesPoint::poisoned);

    m.def("eigenvalue_curve", &eigenvalue_curve, py::arg("family"), py::arg("k"), py::arg("grid"));
    m.def("pdf_curve", &pdf_curve, py::arg("family"), py::arg("k"), py::arg("grid"));

    py::class_<RegionProfile>(m, "RegionProfile")
        .def_readonly("grid", &RegionProfile::grid)
        .def_readonly("types", &RegionProfile::types)
        .def_readonly("pdf_values", &RegionProfile::pdf_values);

    m.def("region_profile", &region_profile, py::arg("family"), py::arg("k"), py::arg("grid"),
          py::arg("table"));

    py::enum_<IntervalClass>(m, "IntervalClass")
        .value("Regular", IntervalClass::Regular)
        .value("Reversal", IntervalClass::Reversal)
        .value("RegularReversal", IntervalClass::RegularReversal)
        .value("ReversalRegular", IntervalClass::ReversalRegular)
        .value("Constant", IntervalClass::Constant)
        .value("Mixed", IntervalClass::Mixed);

    m.def("classify_interval", &classify_interval, py::arg("profile"));

    // ---- orbits and bifurcation ----
    py::enum_<OrbitStatus>(m, "OrbitStatus")
        .value("Converged", OrbitStatus::Converged)
        .value("Aperiodic", OrbitStatus::Aperiodic)
        .value("Divergent", OrbitStatus::Divergent);

    py::class_<OrbitParams>(m, "OrbitParams")
        .def(py::init<>())
        .def_readwrite("n_transient", &OrbitParams::n_transient)
        .def_readwrite("n_keep", &OrbitParams::n_keep)
        .def_readwrite("escape_radius", &OrbitParams::escape_radius)
        .def_readwrite("detect_rel_tol", &OrbitParams::detect_rel_tol)
        .def_readwrite("p_max", &OrbitParams::p_max);

    py::class_<OrbitResult>(m, "OrbitResult")
        .def_readonly("tail", &OrbitResult::tail)
        .def_readonly("status", &OrbitResult::status)
        .def_readonly("period", &OrbitResult::period)
        .def_readonly("lyap_proxy", &OrbitResult::lyap_proxy);

    m.def("iterate_orbit", &iterate_orbit, py::arg("c"), py::arg("x0"), py::arg("params") = OrbitParams{});
    m.def(
        "detect_period",
        [](const std::vector<double>& tail, double rel_tol, int p_max) -> py::object {
            auto p = detect_period(tail, rel_tol, p_max);
            if (!p) return py::none();
            return py::int_(*p);
        },
        py::arg("tail"), py::arg("rel_tol"), py::arg("p_max"));

    py::class_<SeedPolicy>(m, "SeedPolicy")
        .def(py::init<>())
        .def_readwrite("critical_points", &SeedPolicy::critical_points)
        .def_readwrite("appendix_seeds", &SeedPolicy::appendix_seeds)
        .def_readwrite("fixed_point_perturbations", &SeedPolicy::fixed_point_perturbations)
        .def_readwrite("perturbation", &SeedPolicy::perturbation)
        .def_readwrite("extra", &SeedPolicy::extra);

    m.def("make_seeds", &make_seeds, py::arg("c"), py::arg("policy") = SeedPolicy{});

    py::class_<SweepPoint>(m, "SweepPoint")
        .def_readonly("lam", &SweepPoint::lambda)
        .def_readonly("poisoned", &SweepPoint::poisoned)
        .def_readonly("seeds", &SweepPoint::seeds)
        .def_readonly("seed_status", &SweepPoint::seed_status)
        .def_readonly("seed_periods", &SweepPoint::seed_periods)
        .def_readonly("plotted", &SweepPoint::plotted)
        .def_readonly("attracting_period", &SweepPoint::attracting_period)
        .def_readonly("branch_count", &SweepPoint::branch_count)
        .def_readonly("distinct_cycles", &SweepPoint::distinct_cycles)
        .def_readonly("any_divergent", &SweepPoint::any_divergent)
        .def_readonly("chaotic_heuristic", &SweepPoint::chaotic_heuristic);

    py::class_<SweepDataset>(m, "SweepDataset")
        .def_readonly("grid", &SweepDataset::grid)
        .def_readonly("points", &SweepDataset::points);

    m.def("sweep", &sweep, py::arg("family"), py::arg("grid"), py::arg("seeds") = SeedPolicy{},
          py::arg("params") = OrbitParams{});

    py::class_<BifurcationEstimate>(m, "BifurcationEstimate")
        .def_readonly("k", &BifurcationEstimate::k)
        .def_readonly("value", &BifurcationEstimate::value)
        .def_readonly("half_width", &BifurcationEstimate::half_width)
        .def_property_readonly("method",
                               [](const BifurcationEstimate& e) {
                                   return e.method == BifurcationEstimate::Method::ClosedForm ? "closed-form"
                                                                                              : "bisection";
                               })
        .def_readonly("noise_floor", &BifurcationEstimate::noise_floor);

    m.def("find_bifurcation_value", &find_bifurcation_value, py::arg("degree"), py::arg("slice"),
          py::arg("k"), py::arg("bracket_lo"), py::arg("bracket_hi"), py::arg("bisect_tol") = 1e-6,
          py::arg("force_bisection") = false, py::arg("cascade_fp") = 0);
    m.def("feigenbaum_predict", &feigenbaum_predict, py::arg("b_prev"), py::arg("b_cur"));
    m.def("feigenbaum_delta", &feigenbaum_delta, py::arg("values"));
    m.attr("FEIGENBAUM_DELTA") = kFeigenbaumDelta;

    py::class_<PeriodDoublingCheck>(m, "PeriodDoublingCheck")
        .def_readonly("verified", &PeriodDoublingCheck::verified)
        .def_readonly("failed_condition", &PeriodDoublingCheck::failed_condition);

    m.def("verify_period_doubling", &verify_period_doubling, py::arg("family"), py::arg("k_fp"),
          py::arg("lambda0"), py::arg("fd_step") = 1e-4);

    py::class_<CascadeTable>(m, "CascadeTable")
        .def_readonly("degree", &CascadeTable::degree)
        .def_readonly("levels", &CascadeTable::levels)
        .def_readonly("b_infinity", &CascadeTable::b_infinity);

    m.def(
        "estimate_b_infinity",
        [](int degree, int k_max, double bisect_tol) { return estimate_b_infinity(degree, k_max, bisect_tol); },
        py::arg("degree"), py::arg("k_max"), py::arg("bisect_tol") = 1e-6);

    // ---- analysis and io ----
    py::class_<FixedPointReport>(m, "FixedPointReport")
        .def_readonly("point", &FixedPointReport::point)
        .def_readonly("multiplier", &FixedPointReport::multiplier)
        .def_readonly("pdf_value", &FixedPointReport::pdf_value)
        .def_readonly("stability", &FixedPointReport::stability);

    py::class_<MapAnalysis>(m, "MapAnalysis")
        .def_readonly("general", &MapAnalysis::general)
        .def_readonly("lff", &MapAnalysis::lff)
        .def_readonly("canonical", &MapAnalysis::canonical)
        .def_readonly("transform", &MapAnalysis::transform)
        .def_readonly("fixed_points", &MapAnalysis::fixed_points)
        .def_readonly("singer", &MapAnalysis::singer)
        .def_readonly("conjugacy_max_error", &MapAnalysis::conjugacy_max_error)
        .def("to_json", &analysis_to_json);

    m.def("analyze_general_map", &analyze_general_map, py::arg("g"), py::arg("tol") = 1e-10,
          py::arg("anchor_index") = -1);
    m.def("analyze_canonical_map", &analyze_canonical_map, py::arg("c"), py::arg("tol") = 1e-10);

    m.def("sweep_to_csv", &sweep_to_csv, py::arg("data"));
    m.def("sweep_sidecar_json", &sweep_sidecar_json, py::arg("data"));
    m.def("sweep_to_svg", &sweep_to_svg, py::arg("data"), py::arg("deterministic") = true);
}
