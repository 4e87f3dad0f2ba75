#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "rmf/conditioning.hpp"
#include "rmf/core.hpp"
#include "rmf/eigensolve.hpp"
#include "rmf/io.hpp"
#include "rmf/structure.hpp"
#include "rmf/verify.hpp"

namespace py = pybind11;
using namespace rmf;

namespace {

std::string equality_state_name(EqualityState s) {
    switch (s) {
        case EqualityState::Yes: return "yes";
        case EqualityState::No: return "no";
        case EqualityState::Unknown: return "unknown";
    }
    return "unknown";
}

} // namespace

PYBIND11_MODULE(_rmfcond, mod) {
    mod.doc() = "Structured eigenvalue condition numbers of rational matrix functions";

    py::register_exception<PoleError>(mod, "PoleError");
    py::register_exception<NotSimpleError>(mod, "NotSimpleError");
    py::register_exception<StructureMismatch>(mod, "StructureMismatchError");
    py::register_exception<InfeasibleError>(mod, "InfeasibleError");
    py::register_exception<UnsupportedError>(mod, "UnsupportedError");
    py::register_exception<NoConvergence>(mod, "NoConvergenceError");
    py::register_exception<ParseError>(mod, "ParseError", PyExc_ValueError);
    py::register_exception<DimensionMismatch>(mod, "DimensionMismatchError", PyExc_ValueError);
    py::register_exception<BadParams>(mod, "BadParamsError", PyExc_ValueError);

    py::enum_<StructureTag>(mod, "StructureTag")
        .value("Unstructured", StructureTag::Unstructured)
        .value("Symmetric", StructureTag::Symmetric)
        .value("SkewSymmetric", StructureTag::SkewSymmetric)
        .value("TEven", StructureTag::TEven)
        .value("TOdd", StructureTag::TOdd)
        .value("Hermitian", StructureTag::Hermitian)
        .value("SkewHermitian", StructureTag::SkewHermitian)
        .value("StarEven", StructureTag::StarEven)
        .value("StarOdd", StructureTag::StarOdd)
        .value("StarPalindromic", StructureTag::StarPalindromic)
        .value("TPalindromic", StructureTag::TPalindromic);

    mod.def("tag_name", &tag_name, py::arg("tag"));
    mod.def("tag_from_name", &tag_from_name, py::arg("name"));

    py::class_<Weight>(mod, "Weight")
        .def(py::init<Poly, Poly>(), py::arg("s"), py::arg("q"))
        .def_readonly("s", &Weight::s)
        .def_readonly("q", &Weight::q)
        .def("__call__", &Weight::eval, py::arg("z"))
        .def("eval", &Weight::eval, py::arg("z"))
        .def("eval_derivative", &Weight::eval_derivative, py::arg("z"));

    py::class_<RationalMatrixFunction>(mod, "RationalMatrixFunction")
        .def(py::init<std::vector<Matrix>, std::vector<std::pair<Weight, Matrix>>,
                      std::optional<StructureTag>>(),
             py::arg("poly"), py::arg("terms") = std::vector<std::pair<Weight, Matrix>>{},
             py::arg("structure") = std::nullopt)
        .def_readonly("poly", &RationalMatrixFunction::poly)
        .def_readonly("terms", &RationalMatrixFunction::terms)
        .def_readonly("declared_structure", &RationalMatrixFunction::declared_structure)
        .def_property_readonly("n", &RationalMatrixFunction::n)
        .def_property_readonly("degree", &RationalMatrixFunction::degree)
        .def_property_readonly("n_terms", &RationalMatrixFunction::n_terms)
        .def("__call__", &RationalMatrixFunction::eval, py::arg("z"))
        .def("eval", &RationalMatrixFunction::eval, py::arg("z"))
        .def("eval_derivative", &RationalMatrixFunction::eval_derivative, py::arg("z"))
        .def("scale_at", &RationalMatrixFunction::scale_at, py::arg("z"))
        .def("coefficient_scale", &RationalMatrixFunction::coefficient_scale)
        .def("is_pole", &RationalMatrixFunction::is_pole, py::arg("z"))
        .def("pole_candidates", &RationalMatrixFunction::pole_candidates);

    py::class_<PerturbationTuple>(mod, "PerturbationTuple")
        .def_static("zeros", &PerturbationTuple::zeros, py::arg("G"))
        .def_readwrite("deltas_poly", &PerturbationTuple::deltas_poly)
        .def_readwrite("deltas_terms", &PerturbationTuple::deltas_terms)
        .def_readwrite("epsilon", &PerturbationTuple::epsilon)
        .def("eval", &PerturbationTuple::eval, py::arg("G"), py::arg("z"))
        .def("norm_2inf", &PerturbationTuple::norm_2inf)
        .def("scaled", &PerturbationTuple::scaled, py::arg("t"));

    mod.def("perturbed", &perturbed, py::arg("G"), py::arg("dG"), py::arg("t"));
    mod.def("spectral_norm", &spectral_norm, py::arg("A"));

    py::class_<Eigentriplet>(mod, "Eigentriplet")
        .def(py::init<>())
        .def_readwrite("lam", &Eigentriplet::lambda)
        .def_readwrite("x", &Eigentriplet::x)
        .def_readwrite("y", &Eigentriplet::y)
        .def_readonly("right_residual", &Eigentriplet::right_residual)
        .def_readonly("left_residual", &Eigentriplet::left_residual)
        .def_readwrite("derivative_scalar", &Eigentriplet::derivative_scalar);

    py::class_<SolveStats>(mod, "SolveStats")
        .def_readonly("candidates", &SolveStats::candidates)
        .def_readonly("pole_filtered", &SolveStats::pole_filtered)
        .def_readonly("residual_filtered", &SolveStats::residual_filtered)
        .def_readonly("deduplicated", &SolveStats::deduplicated);

    py::class_<AssumptionReport>(mod, "AssumptionReport")
        .def_readonly("is_simple", &AssumptionReport::is_simple)
        .def_readonly("nonzero_weights", &AssumptionReport::nonzero_weights)
        .def_readonly("not_a_pole", &AssumptionReport::not_a_pole)
        .def_readonly("warnings", &AssumptionReport::warnings)
        .def("all_ok", &AssumptionReport::all_ok);

    mod.def(
        "solve_all",
        [](const RationalMatrixFunction& G, double residual_tol) {
            return solve_all(G, nullptr, residual_tol);
        },
        py::arg("G"), py::arg("residual_tol") = 1e-8);
    mod.def(
        "solve_all_with_stats",
        [](const RationalMatrixFunction& G, double residual_tol) {
            SolveStats stats;
            auto eigs = solve_all(G, &stats, residual_tol);
            return py::make_tuple(eigs, stats);
        },
        py::arg("G"), py::arg("residual_tol") = 1e-8);
    mod.def("refine_triplet", &refine_triplet, py::arg("G"), py::arg("lambda0"), py::arg("x0"),
            py::arg("y0"));
    mod.def("check_assumptions", &check_assumptions, py::arg("G"), py::arg("t"));

    py::enum_<EqualityState>(mod, "EqualityState")
        .value("Yes", EqualityState::Yes)
        .value("No", EqualityState::No)
        .value("Unknown", EqualityState::Unknown);

    py::class_<EqualityVerdict>(mod, "EqualityVerdict")
        .def_readonly("state", &EqualityVerdict::state)
        .def("holds", &EqualityVerdict::holds)
        .def_property_readonly("reason",
                               [](const EqualityVerdict& v) { return reason_name(v.reason); })
        .def("__repr__", [](const EqualityVerdict& v) {
            return "EqualityVerdict(" + equality_state_name(v.state) + ", '" +
                   reason_name(v.reason) + "')";
        });

    py::class_<Factors>(mod, "Factors")
        .def_readonly("c", &Factors::c)
        .def_readonly("beta", &Factors::beta)
        .def_readonly("gamma", &Factors::gamma)
        .def_readonly("B1", &Factors::B1)
        .def_readonly("B2", &Factors::B2);

    py::class_<ConditionReport>(mod, "ConditionReport")
        .def_readonly("tag", &ConditionReport::tag)
        .def_readonly("kappa", &ConditionReport::kappa)
        .def_readonly("alpha", &ConditionReport::alpha)
        .def_readonly("exact", &ConditionReport::exact)
        .def_readonly("lo", &ConditionReport::lo)
        .def_readonly("hi", &ConditionReport::hi)
        .def_readonly("factors", &ConditionReport::factors)
        .def_readonly("equality", &ConditionReport::equality)
        .def_readonly("warnings", &ConditionReport::warnings);

    mod.def("alpha_weight_sum", &alpha_weight_sum, py::arg("G"), py::arg("lam"));
    mod.def("kappa_unstructured", &kappa_unstructured, py::arg("G"), py::arg("t"));
    mod.def("kappa_structured", &kappa_structured, py::arg("G"), py::arg("t"), py::arg("tag"));
    mod.def("structure_factors", &structure_factors, py::arg("G"), py::arg("t"), py::arg("tag"));
    mod.def("equality_predicate", &equality_predicate, py::arg("G"), py::arg("t"),
            py::arg("tag"));

    py::class_<StructureReport>(mod, "StructureReport")
        .def_readonly("tag", &StructureReport::tag)
        .def_readonly("ok", &StructureReport::ok)
        .def_readonly("matrix_residuals", &StructureReport::matrix_residuals)
        .def_readonly("weight_violations", &StructureReport::weight_violations);

    py::enum_<TransformMode>(mod, "TransformMode")
        .value("RotateZ", TransformMode::RotateZ)
        .value("ScaleI", TransformMode::ScaleI)
        .value("RotateAndScale", TransformMode::RotateAndScale);

    mod.def("validate_structure", &validate_structure, py::arg("G"), py::arg("tag"),
            py::arg("tol") = 1e-10);
    mod.def("detect_structures", &detect_structures, py::arg("G"), py::arg("tol") = 1e-10);
    mod.def("transform_rmf", &transform_rmf, py::arg("G"), py::arg("mode"));

    py::class_<SupOracleResult>(mod, "SupOracleResult")
        .def_readonly("value", &SupOracleResult::value)
        .def_readonly("grid_points", &SupOracleResult::grid_points)
        .def_readonly("argmax_phase", &SupOracleResult::argmax_phase);

    mod.def("sup_oracle_structured", &sup_oracle_structured, py::arg("G"), py::arg("t"),
            py::arg("tag"), py::arg("grid_n") = 4096);
    mod.def("sup_oracle_sampling", &sup_oracle_sampling, py::arg("G"), py::arg("t"),
            py::arg("tag"), py::arg("n_samples"), py::arg("seed"));
    mod.def(
        "random_structured_tuple",
        [](const RationalMatrixFunction& G, StructureTag tag, std::uint64_t seed) {
            std::mt19937_64 rng(seed);
            return random_structured_tuple(G, tag, rng);
        },
        py::arg("G"), py::arg("tag"), py::arg("seed"));
    mod.def("worst_case_perturbation", &worst_case_perturbation, py::arg("G"), py::arg("t"),
            py::arg("tag"), py::arg("eps"));

    py::class_<SlopeReport>(mod, "SlopeReport")
        .def_readonly("eps_list", &SlopeReport::eps_list)
        .def_readonly("predicted_shifts", &SlopeReport::predicted_shifts)
        .def_readonly("actual_shifts", &SlopeReport::actual_shifts)
        .def_readonly("remainder_slope", &SlopeReport::remainder_slope)
        .def_readonly("exact_match", &SlopeReport::exact_match);

    mod.def("first_order_experiment", &first_order_experiment, py::arg("G"), py::arg("t"),
            py::arg("dG_unit"), py::arg("eps_list"));

    py::class_<GenerateParams>(mod, "GenerateParams")
        .def(py::init<>())
        .def_readwrite("n", &GenerateParams::n)
        .def_readwrite("d", &GenerateParams::d)
        .def_readwrite("m", &GenerateParams::m)
        .def_readwrite("seed", &GenerateParams::seed)
        .def_readwrite("structure", &GenerateParams::structure)
        .def_readwrite("ranks", &GenerateParams::ranks)
        .def_readwrite("a", &GenerateParams::a)
        .def_readwrite("alpha", &GenerateParams::alpha)
        .def_readwrite("beta", &GenerateParams::beta)
        .def_readwrite("sigma", &GenerateParams::sigma);

    mod.def("generate_example", &generate_example, py::arg("name"), py::arg("params"));
    mod.def("parse_problem", &parse_problem, py::arg("path"));
    mod.def("parse_problem_text", &parse_problem_text, py::arg("text"));
    mod.def("write_problem", &write_problem, py::arg("G"), py::arg("path"));
    mod.def("problem_to_text", &problem_to_text, py::arg("G"));
}
