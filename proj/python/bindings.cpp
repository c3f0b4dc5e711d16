#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chirplike/chirplike.hpp"
#include "chirplike/io.hpp"

namespace py = pybind11;
using namespace chirplike;

namespace {

SignalSeries series(const std::vector<double>& y) { return SignalSeries(y); }

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

std::string params_repr(const MultiParams& p) { return "MultiParams(" + to_json(p).dump() + ")"; }

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Chirp-like signal model: synthesis, least-squares fitting and asymptotics";
    m.attr("__version__") = kVersion;

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", error.ptr());
    py::register_exception<NumericalFailure>(m, "NumericalFailure", error.ptr());

    // -- model ----------------------------------------------------------------
    py::class_<Sinusoid>(m, "Sinusoid")
        .def(py::init<double, double, double>(), py::arg("a"), py::arg("b"), py::arg("frequency"))
        .def_readwrite("a", &Sinusoid::a)
        .def_readwrite("b", &Sinusoid::b)
        .def_readwrite("frequency", &Sinusoid::frequency)
        .def("power", &Sinusoid::power)
        .def(py::self == py::self);

    py::class_<Chirp>(m, "Chirp")
        .def(py::init<double, double, double>(), py::arg("c"), py::arg("d"), py::arg("rate"))
        .def_readwrite("c", &Chirp::c)
        .def_readwrite("d", &Chirp::d)
        .def_readwrite("rate", &Chirp::rate)
        .def("power", &Chirp::power)
        .def(py::self == py::self);

    py::class_<MultiParams>(m, "MultiParams")
        .def(py::init<std::vector<Sinusoid>, std::vector<Chirp>>(), py::arg("sinusoids") = std::vector<Sinusoid>{},
             py::arg("chirps") = std::vector<Chirp>{})
        .def_readwrite("sinusoids", &MultiParams::sinusoids)
        .def_readwrite("chirps", &MultiParams::chirps)
        .def_property_readonly("p", &MultiParams::p)
        .def_property_readonly("q", &MultiParams::q)
        .def("flatten", [](const MultiParams& p) { return to_array(p.flatten()); })
        .def("parameter_names", &MultiParams::parameter_names)
        .def_static("unflatten",
                    [](const std::vector<double>& v, std::size_t p, std::size_t q) { return MultiParams::unflatten(v, p, q); },
                    py::arg("values"), py::arg("p"), py::arg("q"))
        .def("identifiability_issues", [](const MultiParams& p) { return identifiability_issues(p); })
        .def(py::self == py::self)
        .def("__repr__", &params_repr);

    py::class_<LagCoefficient>(m, "LagCoefficient")
        .def(py::init<int, double>(), py::arg("lag"), py::arg("value"))
        .def_readwrite("lag", &LagCoefficient::lag)
        .def_readwrite("value", &LagCoefficient::value);

    py::class_<NoiseSpec>(m, "NoiseSpec")
        .def(py::init<std::vector<LagCoefficient>, double>(), py::arg("coefficients"), py::arg("sigma2"))
        .def_static("iid", &NoiseSpec::iid, py::arg("sigma2"))
        .def_static("moving_average", &NoiseSpec::moving_average, py::arg("sigma2"), py::arg("rho") = 0.5)
        .def_readwrite("coefficients", &NoiseSpec::coefficients)
        .def_readwrite("sigma2", &NoiseSpec::sigma2);

    m.def(
        "synthesize",
        [](const MultiParams& params, std::size_t n, std::optional<NoiseSpec> noise, std::uint64_t seed) {
            return to_array(synthesize(params, n, noise, seed).samples);
        },
        py::arg("params"), py::arg("n"), py::arg("noise") = py::none(), py::arg("seed") = 0,
        "y(1..n) of the model, plus linear-process noise when given.");
    m.def(
        "gen_noise",
        [](const NoiseSpec& spec, std::size_t n, std::uint64_t seed) { return to_array(gen_noise(spec, n, seed).samples); },
        py::arg("spec"), py::arg("n"), py::arg("seed"));

    // -- designmat / optimize -------------------------------------------------
    m.def("criterion_R", [](const std::vector<double>& y, double a, double b) { return criterion_R(series(y), a, b); },
          py::arg("y"), py::arg("alpha"), py::arg("beta"));
    m.def("criterion_R1", [](const std::vector<double>& y, double a) { return criterion_R1(series(y), a); },
          py::arg("y"), py::arg("alpha"));
    m.def("criterion_R2", [](const std::vector<double>& y, double b) { return criterion_R2(series(y), b); },
          py::arg("y"), py::arg("beta"));
    m.def("periodogram_I1", [](const std::vector<double>& y, double a) { return periodogram_I1(series(y), a); },
          py::arg("y"), py::arg("alpha"));
    m.def("periodogram_I2", [](const std::vector<double>& y, double b) { return periodogram_I2(series(y), b); },
          py::arg("y"), py::arg("beta"));
    m.def("periodogram_I1_grid", [](const std::vector<double>& y) { return to_array(periodogram_I1_grid(series(y))); },
          py::arg("y"), "I1 at pi j / n, j = 1..n-1.");
    m.def("periodogram_I2_grid", [](const std::vector<double>& y) { return to_array(periodogram_I2_grid(series(y))); },
          py::arg("y"), "I2 at pi k / n^2, k = 1..n^2-1.");

    // -- estimators -----------------------------------------------------------
    py::enum_<FitMethod>(m, "FitMethod").value("Joint", FitMethod::Joint).value("Sequential", FitMethod::Sequential);
    py::enum_<ComponentKind>(m, "ComponentKind")
        .value("Sinusoid", ComponentKind::Sinusoid)
        .value("Chirp", ComponentKind::Chirp);

    py::class_<StageRecord>(m, "StageRecord")
        .def_readonly("stage", &StageRecord::stage)
        .def_readonly("kind", &StageRecord::kind)
        .def_readonly("initial", &StageRecord::initial)
        .def_readonly("refined", &StageRecord::refined);

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("params", &FitResult::params)
        .def_readonly("sse", &FitResult::sse)
        .def_readonly("n", &FitResult::n)
        .def_readonly("bic", &FitResult::bic)
        .def_readonly("asym_se", &FitResult::asym_se)
        .def_readonly("method", &FitResult::method)
        .def_readonly("trace", &FitResult::trace)
        .def("to_json", [](const FitResult& f) { return to_json(f).dump(); });

    py::class_<OrderSelection>(m, "OrderSelection")
        .def_readonly("p", &OrderSelection::p)
        .def_readonly("q", &OrderSelection::q)
        .def_readonly("fit", &OrderSelection::fit)
        .def_readonly("bic_table", &OrderSelection::bic_table);

    m.def("bic", &bic, py::arg("sse"), py::arg("n"), py::arg("p"), py::arg("q"));
    m.def("fit_joint_one", [](const std::vector<double>& y) { return fit_joint_one(series(y)); }, py::arg("y"),
          py::call_guard<py::gil_scoped_release>());
    m.def("fit_sequential_one", [](const std::vector<double>& y) { return fit_sequential_one(series(y)); },
          py::arg("y"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "fit_sequential_multi",
        [](const std::vector<double>& y, std::size_t p, std::size_t q) { return fit_sequential_multi(series(y), p, q); },
        py::arg("y"), py::arg("p"), py::arg("q"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "select_order_bic",
        [](const std::vector<double>& y, std::size_t pmax, std::size_t qmax) {
            return select_order_bic(series(y), pmax, qmax);
        },
        py::arg("y"), py::arg("p_max"), py::arg("q_max"), py::call_guard<py::gil_scoped_release>());
    m.def("attach_asymptotic_se", &attach_asymptotic_se, py::arg("fit"), py::arg("sigma2"), py::arg("c"));

    // -- asymptotics ----------------------------------------------------------
    m.def("c_constant", &c_constant, py::arg("noise"));
    m.def("sigma_block_sin", &sigma_block_sin, py::arg("a"), py::arg("b"));
    m.def("sigma_block_chirp", &sigma_block_chirp, py::arg("c"), py::arg("d"));
    m.def("invert_block", &invert_block, py::arg("sigma"));

    py::class_<ComponentAsymptotics>(m, "ComponentAsymptotics")
        .def_readonly("limit_covariance", &ComponentAsymptotics::limit_covariance)
        .def_readonly("variance", &ComponentAsymptotics::variance)
        .def_readonly("standard_error", &ComponentAsymptotics::standard_error);

    py::class_<AsymReport>(m, "AsymReport")
        .def_readonly("sinusoids", &AsymReport::sinusoids)
        .def_readonly("chirps", &AsymReport::chirps)
        .def("variances", [](const AsymReport& r) { return to_array(r.variances()); })
        .def("standard_errors", [](const AsymReport& r) { return to_array(r.standard_errors()); })
        .def("covariance", &AsymReport::covariance);

    m.def("asym_variances", &asym_variances, py::arg("params"), py::arg("sigma2"), py::arg("c"), py::arg("n"));

    // -- montecarlo -----------------------------------------------------------
    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("truth", &ExperimentConfig::truth)
        .def_readwrite("n", &ExperimentConfig::n)
        .def_readwrite("noise", &ExperimentConfig::noise)
        .def_readwrite("replicates", &ExperimentConfig::replicates)
        .def_readwrite("method", &ExperimentConfig::method)
        .def_readwrite("base_seed", &ExperimentConfig::base_seed)
        .def_readwrite("keep_raw", &ExperimentConfig::keep_raw)
        .def_readwrite("threads", &ExperimentConfig::threads)
        .def("validate", &ExperimentConfig::validate);

    py::class_<ParameterSummary>(m, "ParameterSummary")
        .def_readonly("name", &ParameterSummary::name)
        .def_readonly("truth", &ParameterSummary::truth)
        .def_readonly("average", &ParameterSummary::average)
        .def_readonly("bias", &ParameterSummary::bias)
        .def_readonly("variance", &ParameterSummary::variance)
        .def_readonly("mse", &ParameterSummary::mse)
        .def_readonly("asym_var", &ParameterSummary::asym_var);

    py::class_<ExperimentReport>(m, "ExperimentReport")
        .def_readonly("config", &ExperimentReport::config)
        .def_readonly("parameters", &ExperimentReport::parameters)
        .def_readonly("completed", &ExperimentReport::completed)
        .def_readonly("failures", &ExperimentReport::failures)
        .def_readonly("failure_messages", &ExperimentReport::failure_messages)
        .def_readonly("runtime_seconds", &ExperimentReport::runtime_seconds)
        .def_readonly("raw", &ExperimentReport::raw)
        .def("to_json", [](const ExperimentReport& r) { return to_json(r).dump(); });

    m.def("run_experiment", &run_experiment, py::arg("config"), py::call_guard<py::gil_scoped_release>());

    py::enum_<TrigKind>(m, "TrigKind")
        .value("CosSquared", TrigKind::CosSquared)
        .value("SinSquared", TrigKind::SinSquared)
        .value("SinCos", TrigKind::SinCos)
        .value("Cos", TrigKind::Cos)
        .value("Sin", TrigKind::Sin);
    py::enum_<PhaseKind>(m, "PhaseKind").value("Linear", PhaseKind::Linear).value("Quadratic", PhaseKind::Quadratic);

    m.def("empirical_trig_average",
          py::overload_cast<std::size_t, double, TrigKind, PhaseKind, std::size_t>(&empirical_trig_average), py::arg("k"),
          py::arg("phi"), py::arg("kind"), py::arg("phase"), py::arg("n"), "n^-(k+1) sum_t t^k trig(phi t or phi t^2).");
}
