#include "dris/estimators.hpp"
#include "dris/evaluation.hpp"
#include "dris/protocol.hpp"
#include "dris/tensor.hpp"

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace dris;

namespace {

py::array_t<Complex> tensor_to_array(const Tensor3& t) {
    py::array_t<Complex, py::array::f_style> out(
        {t.dim1(), t.dim2(), t.dim3()});
    auto buf = out.mutable_unchecked<3>();
    for (Eigen::Index k = 0; k < t.dim3(); ++k) {
        ComplexMatrix s = t.slice(k);
        for (Eigen::Index j = 0; j < t.dim2(); ++j)
            for (Eigen::Index i = 0; i < t.dim1(); ++i)
                buf(i, j, k) = s(i, j);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_dris, m) {
    m.doc() = "Double-RIS MIMO channel estimation core";

    py::class_<SystemDims>(m, "SystemDims")
        .def(py::init<>())
        .def_readwrite("m_bs", &SystemDims::m_bs)
        .def_readwrite("m_ue", &SystemDims::m_ue)
        .def_readwrite("m_s1", &SystemDims::m_s1)
        .def_readwrite("m_s2", &SystemDims::m_s2)
        .def_readwrite("i_frames", &SystemDims::i_frames)
        .def_readwrite("j_frames", &SystemDims::j_frames)
        .def_readwrite("k_pilots", &SystemDims::k_pilots)
        .def("validate", &SystemDims::validate);

    py::class_<ChannelSet>(m, "ChannelSet")
        .def_readwrite("g1", &ChannelSet::g1)
        .def_readwrite("g2", &ChannelSet::g2)
        .def_readwrite("h1", &ChannelSet::h1)
        .def_readwrite("h2", &ChannelSet::h2)
        .def_readwrite("t", &ChannelSet::t);

    py::class_<TrainingDesign>(m, "TrainingDesign")
        .def_readwrite("x", &TrainingDesign::x)
        .def_readwrite("theta1", &TrainingDesign::theta1)
        .def_readwrite("theta2", &TrainingDesign::theta2);

    py::class_<EstimateSet>(m, "EstimateSet")
        .def_readwrite("g1_hat", &EstimateSet::g1_hat)
        .def_readwrite("g2_hat", &EstimateSet::g2_hat)
        .def_readwrite("h1_hat", &EstimateSet::h1_hat)
        .def_readwrite("h2_hat", &EstimateSet::h2_hat)
        .def_readwrite("t_hat", &EstimateSet::t_hat)
        .def("finite", &EstimateSet::finite);

    py::class_<MeasurementBundle>(m, "MeasurementBundle")
        .def_property_readonly(
            "y_ris1", [](const MeasurementBundle& b) { return tensor_to_array(b.y_ris1); })
        .def_property_readonly(
            "y_ris2", [](const MeasurementBundle& b) { return tensor_to_array(b.y_ris2); })
        .def_property_readonly(
            "y1c", [](const MeasurementBundle& b) { return tensor_to_array(b.y1c); })
        .def_property_readonly(
            "y2c", [](const MeasurementBundle& b) { return tensor_to_array(b.y2c); })
        .def_readonly("y3_gen", &MeasurementBundle::y3_gen);

    py::enum_<AlsInit>(m, "AlsInit")
        .value("CKRAFT", AlsInit::CKraft)
        .value("RANDOM", AlsInit::Random);

    py::class_<AlsConfig>(m, "AlsConfig")
        .def(py::init<>())
        .def_readwrite("t_max", &AlsConfig::t_max)
        .def_readwrite("init", &AlsConfig::init)
        .def_readwrite("rel_change_tol", &AlsConfig::rel_change_tol)
        .def_readwrite("seed", &AlsConfig::seed);

    py::class_<AlsTrace>(m, "AlsTrace")
        .def_readonly("residual_y1", &AlsTrace::residual_y1)
        .def_readonly("residual_y2", &AlsTrace::residual_y2)
        .def_readonly("iterations_run", &AlsTrace::iterations_run)
        .def_readonly("diverged", &AlsTrace::diverged)
        .def_readonly("warnings", &AlsTrace::warnings);

    py::enum_<Estimator>(m, "Estimator")
        .value("CKRAFT", Estimator::CKraft)
        .value("CALS_RANDOM", Estimator::CAlsRandom)
        .value("CALS_CKRAFT_INIT", Estimator::CAlsCkraftInit)
        .value("BASELINE_UNCOUPLED", Estimator::BaselineUncoupled);

    py::class_<IdentifiabilityVerdict>(m, "IdentifiabilityVerdict")
        .def_readonly("satisfied", &IdentifiabilityVerdict::satisfied)
        .def_readonly("violated", &IdentifiabilityVerdict::violated);

    m.def("kron", &kron, py::arg("a"), py::arg("b"));
    m.def("khatri_rao", &khatri_rao, py::arg("a"), py::arg("b"));
    m.def(
        "cp3_build",
        [](const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c) {
            return tensor_to_array(cp3_build(a, b, c));
        },
        py::arg("a"), py::arg("b"), py::arg("c"));

    m.def("gen_channels", &gen_channels, py::arg("dims"), py::arg("seed"));
    m.def("gen_training", &gen_training, py::arg("dims"));
    m.def(
        "run_protocol",
        [](const ChannelSet& ch, const TrainingDesign& tr, double sigma2,
           std::uint64_t noise_seed, const SystemDims& dims) {
            return run_protocol(ch, tr, NoiseModel{sigma2, noise_seed}, dims);
        },
        py::arg("channels"), py::arg("training"), py::arg("sigma2"),
        py::arg("noise_seed"), py::arg("dims"));

    m.def("ckraft", &ckraft, py::arg("bundle"), py::arg("training"), py::arg("dims"));
    m.def("cals", &cals, py::arg("bundle"), py::arg("training"), py::arg("dims"),
          py::arg("config"));
    m.def("baseline_uncoupled", &baseline_uncoupled, py::arg("bundle"),
          py::arg("training"), py::arg("dims"), py::arg("config"));

    m.def(
        "nmse",
        [](const EstimateSet& est, const ChannelSet& truth) {
            return nmse(cascade(est), cascade(truth));
        },
        py::arg("estimates"), py::arg("truth"),
        "Per-cascade normalized squared errors (P1, P2, P3).");
    m.def("check_identifiability", &check_identifiability, py::arg("dims"),
          py::arg("estimator"));
    m.def("estimator_name", &estimator_name, py::arg("estimator"));
}
