#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "photolink/fitting.hpp"
#include "photolink/freqplan.hpp"
#include "photolink/gatesim.hpp"
#include "photolink/linkmodel.hpp"
#include "photolink/rfchain.hpp"
#include "photolink/scenario.hpp"
#include "photolink/tradeoff.hpp"
#include "photolink/units.hpp"

namespace py = pybind11;
using namespace photolink;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Link-budget, noise, and frequency-planning toolkit for "
              "optically driven cryogenic microwave sources";

    // units
    m.def("to_db", [](double ratio) { return to_db(ratio).value; },
          py::arg("ratio"));
    m.def("to_linear", [](double db) { return to_linear(Decibel{db}); },
          py::arg("db"));

    // linkmodel
    py::class_<linkmodel::PhotodiodeSpec>(m, "PhotodiodeSpec")
        .def(py::init<>())
        .def_readwrite("quantum_efficiency",
                       &linkmodel::PhotodiodeSpec::quantum_efficiency)
        .def_readwrite("gain", &linkmodel::PhotodiodeSpec::gain)
        .def_readwrite("wavelength", &linkmodel::PhotodiodeSpec::wavelength);
    py::class_<linkmodel::LinkEnvironment>(m, "LinkEnvironment")
        .def(py::init<>())
        .def_readwrite("impedance", &linkmodel::LinkEnvironment::impedance)
        .def_readwrite("modulation_depth",
                       &linkmodel::LinkEnvironment::modulation_depth)
        .def_readwrite("stage_temperature",
                       &linkmodel::LinkEnvironment::stage_temperature)
        .def_readwrite("cooling_power",
                       &linkmodel::LinkEnvironment::cooling_power);
    py::class_<linkmodel::NoiseReport>(m, "NoiseReport")
        .def_readonly("shot_psd_ds", &linkmodel::NoiseReport::shot_psd_ds)
        .def_readonly("thermal_psd_ds", &linkmodel::NoiseReport::thermal_psd_ds)
        .def_readonly("n_eff", &linkmodel::NoiseReport::n_eff)
        .def_readonly("n_thermal", &linkmodel::NoiseReport::n_thermal)
        .def("shot_psd_ss", &linkmodel::NoiseReport::shot_psd_ss)
        .def("thermal_psd_ss", &linkmodel::NoiseReport::thermal_psd_ss);
    m.def("quantum_responsivity", &linkmodel::quantum_responsivity,
          py::arg("wavelength"));
    m.def("total_responsivity", &linkmodel::total_responsivity, py::arg("spec"));
    m.def("microwave_power", &linkmodel::microwave_power,
          py::arg("responsivity"), py::arg("p0"), py::arg("modulation_depth"),
          py::arg("impedance"));
    m.def("power_efficiency", &linkmodel::power_efficiency,
          py::arg("responsivity"), py::arg("p0"), py::arg("modulation_depth"),
          py::arg("impedance"));
    m.def("n_eff_shot", &linkmodel::n_eff_shot, py::arg("responsivity"),
          py::arg("p0"), py::arg("impedance"), py::arg("f_rf"));
    m.def("noise_report", &linkmodel::noise_report, py::arg("responsivity"),
          py::arg("p0"), py::arg("temperature"), py::arg("f_rf"),
          py::arg("impedance"));

    // tradeoff
    py::class_<tradeoff::QubitDriveSpec>(m, "QubitDriveSpec")
        .def(py::init<>())
        .def_readwrite("coupling_capacitance",
                       &tradeoff::QubitDriveSpec::coupling_capacitance)
        .def_readwrite("total_capacitance",
                       &tradeoff::QubitDriveSpec::total_capacitance)
        .def_readwrite("qubit_frequency",
                       &tradeoff::QubitDriveSpec::qubit_frequency)
        .def_readwrite("gate_duration",
                       &tradeoff::QubitDriveSpec::gate_duration);
    py::class_<tradeoff::TradeoffPoint>(m, "TradeoffPoint")
        .def_readonly("responsivity", &tradeoff::TradeoffPoint::responsivity)
        .def_readonly("optical_power_x",
                      &tradeoff::TradeoffPoint::optical_power_x)
        .def_readonly("photons_per_gate",
                      &tradeoff::TradeoffPoint::photons_per_gate)
        .def_readonly("gate_error", &tradeoff::TradeoffPoint::gate_error)
        .def_readonly("n_qubit", &tradeoff::TradeoffPoint::n_qubit);
    m.def("rabi_per_volt", &tradeoff::rabi_per_volt, py::arg("qubit"));
    m.def("optical_power_for_x_gate", &tradeoff::optical_power_for_x_gate,
          py::arg("qubit"), py::arg("responsivity"), py::arg("impedance"));
    m.def("gate_error_qnl", &tradeoff::gate_error_qnl, py::arg("photons"));
    m.def("evaluate_point", &tradeoff::evaluate_point, py::arg("qubit"),
          py::arg("environment"), py::arg("wavelength"),
          py::arg("responsivity"));
    m.def("sweep_responsivity", &tradeoff::sweep_responsivity, py::arg("qubit"),
          py::arg("environment"), py::arg("wavelength"), py::arg("r_min"),
          py::arg("r_max"), py::arg("n_points"), py::arg("log_spacing"));

    // gatesim
    py::class_<gatesim::MonteCarloResult>(m, "MonteCarloResult")
        .def_readonly("mean_error", &gatesim::MonteCarloResult::mean_error)
        .def_readonly("std_error_of_mean",
                      &gatesim::MonteCarloResult::std_error_of_mean)
        .def_readonly("trials", &gatesim::MonteCarloResult::trials)
        .def_readonly("seed", &gatesim::MonteCarloResult::seed);
    m.def("monte_carlo_gate_error", &gatesim::monte_carlo_gate_error,
          py::arg("n_target"), py::arg("trials"), py::arg("seed"),
          py::arg("variance_scale") = 1.0);

    // rfchain
    py::class_<rfchain::ChainStage>(m, "ChainStage")
        .def(py::init<>())
        .def_static("from_db", &rfchain::ChainStage::from_db, py::arg("label"),
                    py::arg("gain_db"), py::arg("nf_db"))
        .def_readwrite("label", &rfchain::ChainStage::label)
        .def_readwrite("gain_linear", &rfchain::ChainStage::gain_linear)
        .def_readwrite("noise_factor_linear",
                       &rfchain::ChainStage::noise_factor_linear);
    py::class_<rfchain::SnrBudget>(m, "SnrBudget")
        .def_readonly("signal_power", &rfchain::SnrBudget::signal_power)
        .def_readonly("shot_power", &rfchain::SnrBudget::shot_power)
        .def_readonly("thermal_power", &rfchain::SnrBudget::thermal_power)
        .def_readonly("bandwidth", &rfchain::SnrBudget::bandwidth)
        .def("snr_in", &rfchain::SnrBudget::snr_in);
    m.def("friis_total", [](const std::vector<rfchain::ChainStage>& stages) {
        return rfchain::friis_total(stages);
    });
    m.def("backout_mixer_noise_factor", &rfchain::backout_mixer_noise_factor,
          py::arg("f_total"), py::arg("f_pre"), py::arg("g_pre"),
          py::arg("f_post"), py::arg("g_mixer"));
    m.def("mixer_conversion_gain", &rfchain::mixer_conversion_gain,
          py::arg("g_total"), py::arg("g_pre"), py::arg("g_post"));
    m.def("snr_budget", &rfchain::snr_budget, py::arg("signal_power"),
          py::arg("responsivity"), py::arg("p0"), py::arg("impedance"),
          py::arg("temperature"), py::arg("bandwidth"));
    m.def(
        "insertion_loss_from_fit",
        [](double a, double responsivity, double impedance) {
            return rfchain::insertion_loss_from_fit(a, responsivity, impedance);
        },
        py::arg("a"), py::arg("responsivity"), py::arg("impedance"));

    // freqplan
    py::class_<freqplan::RationalHz>(m, "RationalHz")
        .def(py::init<std::int64_t, std::int64_t>(), py::arg("num"),
             py::arg("den") = 1)
        .def_readonly("num", &freqplan::RationalHz::num)
        .def_readonly("den", &freqplan::RationalHz::den)
        .def("hz", &freqplan::RationalHz::hz)
        .def("rounded_hz", &freqplan::RationalHz::rounded_hz);
    py::class_<freqplan::Tone>(m, "Tone")
        .def_readonly("frequency", &freqplan::Tone::frequency)
        .def_readonly("origin", &freqplan::Tone::origin);
    py::class_<freqplan::MixPlan>(m, "MixPlan")
        .def_readonly("f_mod", &freqplan::MixPlan::f_mod)
        .def_readonly("f_lo", &freqplan::MixPlan::f_lo)
        .def_readonly("harmonic", &freqplan::MixPlan::harmonic)
        .def_readonly("f_if", &freqplan::MixPlan::f_if)
        .def_readonly("f_rf", &freqplan::MixPlan::f_rf)
        .def_readonly("propagating_tones",
                      &freqplan::MixPlan::propagating_tones);
    m.attr("WR10_CUTOFF_HZ") = freqplan::kWr10CutoffHz;
    m.def("solve_lo", &freqplan::solve_lo, py::arg("f_rf"), py::arg("harmonic"),
          py::arg("f_if"));
    m.def("plan_spectroscopy", &freqplan::plan_spectroscopy,
          py::arg("f_rf_target"), py::arg("harmonic"), py::arg("f_if"),
          py::arg("cutoff"), py::arg("sideband_order"));
    m.def("slfi_plan", &freqplan::slfi_plan, py::arg("f_mmw_target"),
          py::arg("f_if_drive"));
    m.def("null_bias_sidebands", &freqplan::null_bias_sidebands,
          py::arg("f_carrier"), py::arg("f_mod"), py::arg("max_order"));
    m.def("beat_tones", &freqplan::beat_tones, py::arg("optical"));
    m.def("waveguide_filter", &freqplan::waveguide_filter, py::arg("tones"),
          py::arg("cutoff"));

    // fitting
    py::class_<fitting::ResonatorFit>(m, "ResonatorFit")
        .def_readonly("f0", &fitting::ResonatorFit::f0)
        .def_readonly("q_internal", &fitting::ResonatorFit::q_internal)
        .def_readonly("q_external", &fitting::ResonatorFit::q_external)
        .def_readonly("asymmetry", &fitting::ResonatorFit::asymmetry)
        .def_readonly("baseline", &fitting::ResonatorFit::baseline)
        .def_readonly("amplitude", &fitting::ResonatorFit::amplitude)
        .def_readonly("residual_rms", &fitting::ResonatorFit::residual_rms)
        .def("q_loaded", &fitting::ResonatorFit::q_loaded);
    m.def("resonator_model", &fitting::resonator_model, py::arg("f"),
          py::arg("f0"), py::arg("q_internal"), py::arg("q_external"),
          py::arg("asymmetry"), py::arg("baseline"), py::arg("amplitude"));
    m.def(
        "fit_resonator",
        [](const std::vector<std::pair<double, double>>& xy) {
            fitting::XYSeries series;
            for (const auto& [x, y] : xy) {
                series.points.push_back({x, y, {}});
            }
            return fitting::fit_resonator(series);
        },
        py::arg("xy"));
    m.def(
        "fit_half_quadratic",
        [](const std::vector<std::pair<double, double>>& xy) {
            fitting::XYSeries series;
            for (const auto& [x, y] : xy) {
                series.points.push_back({x, y, {}});
            }
            const auto fit = fitting::fit_half_quadratic(series);
            return std::make_pair(fit.value, fit.sigma);
        },
        py::arg("xy"));
    m.def(
        "fit_quadratic_offset",
        [](const std::vector<std::pair<double, double>>& xy) {
            fitting::XYSeries series;
            for (const auto& [x, y] : xy) {
                series.points.push_back({x, y, {}});
            }
            const auto fit = fitting::fit_quadratic_offset(series);
            return std::make_pair(
                std::make_pair(fit.quadratic.value, fit.quadratic.sigma),
                std::make_pair(fit.offset.value, fit.offset.sigma));
        },
        py::arg("xy"));

    // scenario commands (same entry points as the CLI subcommands)
    m.def("cmd_tradeoff", &scenario::cmd_tradeoff, py::arg("config"),
          py::arg("out"));
    m.def("cmd_noise", &scenario::cmd_noise, py::arg("config"), py::arg("out"));
    m.def("cmd_chain", &scenario::cmd_chain, py::arg("config"), py::arg("out"));
    m.def(
        "cmd_gatesim",
        [](const std::string& config, const std::string& out,
           std::optional<std::uint64_t> seed) {
            return scenario::cmd_gatesim(config, out, seed);
        },
        py::arg("config"), py::arg("out"), py::arg("seed") = std::nullopt);
    m.def("cmd_freqplan", &scenario::cmd_freqplan, py::arg("config"),
          py::arg("out"));
    m.def("cmd_fit", &scenario::cmd_fit, py::arg("config"), py::arg("out"));
}
