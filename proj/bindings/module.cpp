#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vosper/io.hpp"

namespace py = pybind11;
using namespace vosper;

PYBIND11_MODULE(_vosper, m) {
    m.doc() = "Fourier analysis, regularity decompositions and AP-cover search on Z/pZ";

    py::class_<DensityFunction>(m, "DensityFunction")
        .def(py::init<std::int64_t, std::vector<cplx>>())
        .def_static("constant", &DensityFunction::constant)
        .def_static("indicator", &DensityFunction::indicator)
        .def_static("real", &DensityFunction::real)
        .def_property_readonly("p", &DensityFunction::p)
        .def("values", &DensityFunction::values)
        .def("mean", &DensityFunction::mean);

    py::class_<Spectrum>(m, "Spectrum")
        .def_property_readonly("p", &Spectrum::p)
        .def("coeffs", &Spectrum::coeffs)
        .def("max_nontrivial", &Spectrum::max_nontrivial);

    m.def("dft", &dft);
    m.def("idft", &idft);
    m.def("convolve", &convolve);
    m.def("u2_norm", py::overload_cast<const DensityFunction&>(&u2_norm));
    m.def("l1_norm", [](const DensityFunction& f) { return lp_norm(f, Norm::L1); });
    m.def("l2_norm", [](const DensityFunction& f) { return lp_norm(f, Norm::L2); });
    m.def("linf_norm", [](const DensityFunction& f) { return lp_norm(f, Norm::LInf); });

    py::class_<ResidueSet>(m, "ResidueSet")
        .def_static("of", &ResidueSet::of)
        .def_readonly("p", &ResidueSet::p)
        .def_readonly("members", &ResidueSet::members)
        .def("density", &ResidueSet::density)
        .def("indicator", &ResidueSet::indicator);

    py::class_<ArithmeticProgression>(m, "ArithmeticProgression")
        .def(py::init([](std::int64_t start, std::int64_t diff, std::int64_t length) {
            return ArithmeticProgression{start, diff, length};
        }))
        .def_readonly("start", &ArithmeticProgression::start)
        .def_readonly("diff", &ArithmeticProgression::diff)
        .def_readonly("length", &ArithmeticProgression::length)
        .def("elements", &ArithmeticProgression::elements);

    py::class_<TorusHom>(m, "TorusHom")
        .def(py::init([](std::int64_t p, std::vector<std::int64_t> freqs) {
            return TorusHom{p, std::move(freqs)};
        }))
        .def_readonly("p", &TorusHom::p)
        .def_readonly("freqs", &TorusHom::freqs);

    m.def("popular_doubling", &popular_doubling);
    m.def("bohr_set", &bohr_set);
    m.def("ap_cover", &ap_cover);
    m.def("sumset", &sumset);
    m.def("sine_identity_check", &sine_identity_check);

    py::class_<InequalityRecord>(m, "InequalityRecord")
        .def_readonly("name", &InequalityRecord::name)
        .def_readonly("lhs", &InequalityRecord::lhs)
        .def_readonly("rhs", &InequalityRecord::rhs)
        .def_readonly("holds", &InequalityRecord::holds);

    py::class_<GrowthFunction>(m, "GrowthFunction")
        .def_static("affine", &GrowthFunction::affine)
        .def_static("polynomial", &GrowthFunction::polynomial)
        .def_static("exponential", &GrowthFunction::exponential)
        .def("eval", &GrowthFunction::eval)
        .def("log2_eval", &GrowthFunction::log2_eval);

    py::class_<TorusDecomposition>(m, "TorusDecomposition")
        .def_readonly("f_str", &TorusDecomposition::f_str)
        .def_readonly("f_sml", &TorusDecomposition::f_sml)
        .def_readonly("f_unf", &TorusDecomposition::f_unf)
        .def_readonly("M", &TorusDecomposition::M)
        .def_readonly("phi", &TorusDecomposition::phi)
        .def_readonly("lipschitz", &TorusDecomposition::lipschitz)
        .def_readonly("reduction_steps", &TorusDecomposition::reduction_steps);

    m.def(
        "final_arl",
        [](const DensityFunction& f, double epsilon, const GrowthFunction& growth) {
            return final_arl(f, epsilon, growth);
        },
        py::arg("f"), py::arg("epsilon"), py::arg("growth"));

    py::class_<VerificationReport>(m, "VerificationReport")
        .def_readonly("status", &VerificationReport::status)
        .def_readonly("hypothesis_value", &VerificationReport::hypothesis_value)
        .def_readonly("hypothesis_threshold", &VerificationReport::hypothesis_threshold)
        .def_readonly("hypothesis_holds", &VerificationReport::hypothesis_holds)
        .def_readonly("P", &VerificationReport::P)
        .def_readonly("A_minus_P", &VerificationReport::A_minus_P)
        .def_readonly("P_minus_A", &VerificationReport::P_minus_A)
        .def_readonly("C_emp", &VerificationReport::C_emp)
        .def_readonly("inequalities", &VerificationReport::inequalities);

    m.def(
        "verify_theorem",
        [](const ResidueSet& A, double t, double delta, double eta) {
            return verify_theorem(A, t, delta, eta);
        },
        py::arg("A"), py::arg("t"), py::arg("delta"), py::arg("eta"));

    m.def("complete_matrix", [](const std::vector<std::int64_t>& a) {
        auto A = complete_matrix(a);
        return std::make_pair(A.rows, A.det());
    });
    m.def("bounded_bezout", &bounded_bezout);
    m.def("find_relation", [](const TorusHom& phi, std::int64_t K) {
        auto rel = find_relation(phi, K);
        return rel ? std::optional<std::vector<std::int64_t>>(rel->k) : std::nullopt;
    });
}
