#include "photolink/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "photolink/fitting.hpp"
#include "photolink/gatesim.hpp"
#include "photolink/units.hpp"

namespace photolink::scenario {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
    if (!obj.is_object()) {
        throw ValidationError(path + ": expected an object");
    }
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.contains(key)) {
            throw ValidationError("unknown key '" + path + "." + key + "'");
        }
    }
}

double require_number(const json& obj, const std::string& path,
                      const std::string& key) {
    if (!obj.contains(key)) {
        throw ValidationError("missing key '" + path + "." + key + "'");
    }
    if (!obj[key].is_number()) {
        throw ValidationError("'" + path + "." + key + "' must be a number");
    }
    return obj[key].get<double>();
}

std::optional<double> optional_number(const json& obj, const std::string& path,
                                      const std::string& key) {
    if (!obj.contains(key)) {
        return std::nullopt;
    }
    if (!obj[key].is_number()) {
        throw ValidationError("'" + path + "." + key + "' must be a number");
    }
    return obj[key].get<double>();
}

freqplan::Hz require_hz(const json& obj, const std::string& path,
                        const std::string& key) {
    const double v = require_number(obj, path, key);
    const double rounded = std::round(v);
    if (std::abs(v - rounded) > 1e-6) {
        throw ValidationError("'" + path + "." + key +
                              "' must be an integer number of hertz");
    }
    return static_cast<freqplan::Hz>(rounded);
}

linkmodel::PhotodiodeSpec parse_photodiode(const json& obj) {
    check_keys(obj, "photodiode",
               {"quantum_efficiency", "gain", "wavelength_m",
                "bandwidth_3db_hz"});
    linkmodel::PhotodiodeSpec pd;
    pd.quantum_efficiency =
        require_number(obj, "photodiode", "quantum_efficiency");
    pd.gain = require_number(obj, "photodiode", "gain");
    pd.wavelength = require_number(obj, "photodiode", "wavelength_m");
    pd.bandwidth_3db = optional_number(obj, "photodiode", "bandwidth_3db_hz");
    try {
        pd.validate();
    } catch (const std::domain_error& e) {
        throw ValidationError(std::string("photodiode: ") + e.what());
    }
    return pd;
}

linkmodel::LinkEnvironment parse_environment(const json& obj) {
    check_keys(obj, "environment",
               {"impedance_ohm", "modulation_depth", "stage_temperature_k",
                "cooling_power_w"});
    linkmodel::LinkEnvironment env;
    env.impedance = require_number(obj, "environment", "impedance_ohm");
    if (const auto v = optional_number(obj, "environment", "modulation_depth")) {
        env.modulation_depth = *v;
    }
    env.stage_temperature =
        require_number(obj, "environment", "stage_temperature_k");
    if (const auto v = optional_number(obj, "environment", "cooling_power_w")) {
        env.cooling_power = *v;
    }
    try {
        env.validate();
    } catch (const std::domain_error& e) {
        throw ValidationError(std::string("environment: ") + e.what());
    }
    return env;
}

tradeoff::QubitDriveSpec parse_qubit(const json& obj) {
    check_keys(obj, "qubit",
               {"coupling_capacitance_f", "total_capacitance_f",
                "qubit_frequency_hz", "gate_duration_s"});
    tradeoff::QubitDriveSpec q;
    q.coupling_capacitance =
        require_number(obj, "qubit", "coupling_capacitance_f");
    q.total_capacitance = require_number(obj, "qubit", "total_capacitance_f");
    q.qubit_frequency = require_number(obj, "qubit", "qubit_frequency_hz");
    q.gate_duration = require_number(obj, "qubit", "gate_duration_s");
    try {
        q.validate();
    } catch (const std::domain_error& e) {
        throw ValidationError(std::string("qubit: ") + e.what());
    }
    return q;
}

ChainSection parse_chain(const json& obj) {
    check_keys(obj, "chain",
               {"stages", "g_total", "f_total", "snr_out", "signal_power_w",
                "responsivity_a_per_w", "optical_power_w", "bandwidth_hz"});
    ChainSection chain;
    if (!obj.contains("stages") || !obj["stages"].is_array() ||
        obj["stages"].empty()) {
        throw ValidationError("'chain.stages' must be a non-empty array");
    }
    int index = 0;
    for (const json& stage : obj["stages"]) {
        const std::string path = "chain.stages[" + std::to_string(index) + "]";
        check_keys(stage, path, {"label", "gain_db", "nf_db"});
        if (!stage.contains("label") || !stage["label"].is_string()) {
            throw ValidationError("'" + path + ".label' must be a string");
        }
        try {
            chain.stages.push_back(rfchain::ChainStage::from_db(
                stage["label"].get<std::string>(),
                require_number(stage, path, "gain_db"),
                require_number(stage, path, "nf_db")));
        } catch (const std::domain_error& e) {
            throw ValidationError(path + ": " + e.what());
        }
        ++index;
    }
    chain.g_total = optional_number(obj, "chain", "g_total");
    chain.f_total = optional_number(obj, "chain", "f_total");
    chain.snr_out = optional_number(obj, "chain", "snr_out");
    chain.signal_power = optional_number(obj, "chain", "signal_power_w");
    chain.responsivity = optional_number(obj, "chain", "responsivity_a_per_w");
    chain.optical_power = optional_number(obj, "chain", "optical_power_w");
    if (const auto v = optional_number(obj, "chain", "bandwidth_hz")) {
        chain.bandwidth = *v;
    }
    return chain;
}

NoiseSection parse_noise(const json& obj) {
    check_keys(obj, "noise",
               {"responsivity_a_per_w", "f_rf_hz", "p0_min_w", "p0_max_w",
                "n_points", "excess_a_photons_per_w2", "excess_b_photons"});
    NoiseSection noise;
    noise.responsivity = require_number(obj, "noise", "responsivity_a_per_w");
    noise.f_rf = require_number(obj, "noise", "f_rf_hz");
    noise.p0_min = require_number(obj, "noise", "p0_min_w");
    noise.p0_max = require_number(obj, "noise", "p0_max_w");
    if (const auto v = optional_number(obj, "noise", "n_points")) {
        noise.n_points = static_cast<int>(*v);
    }
    noise.excess_a = optional_number(obj, "noise", "excess_a_photons_per_w2");
    noise.excess_b = optional_number(obj, "noise", "excess_b_photons");
    if (noise.excess_a.has_value() != noise.excess_b.has_value()) {
        throw ValidationError(
            "noise: excess_a_photons_per_w2 and excess_b_photons must be "
            "supplied together");
    }
    if (noise.n_points < 1 || !(noise.p0_min >= 0.0) ||
        !(noise.p0_max >= noise.p0_min)) {
        throw ValidationError("noise: invalid P0 grid");
    }
    return noise;
}

GatesimSection parse_gatesim(const json& obj) {
    check_keys(obj, "gatesim", {"n_targets", "trials", "variance_scale"});
    GatesimSection gs;
    if (obj.contains("n_targets")) {
        if (!obj["n_targets"].is_array() || obj["n_targets"].empty()) {
            throw ValidationError("'gatesim.n_targets' must be a non-empty array");
        }
        gs.n_targets.clear();
        for (const json& v : obj["n_targets"]) {
            if (!v.is_number()) {
                throw ValidationError("'gatesim.n_targets' entries must be numbers");
            }
            gs.n_targets.push_back(v.get<double>());
        }
    }
    if (const auto v = optional_number(obj, "gatesim", "trials")) {
        if (!(*v >= 1.0)) {
            throw ValidationError("'gatesim.trials' must be >= 1");
        }
        gs.trials = static_cast<std::uint64_t>(*v);
    }
    if (const auto v = optional_number(obj, "gatesim", "variance_scale")) {
        gs.variance_scale = *v;
    }
    return gs;
}

PlanSection parse_plan(const json& obj) {
    check_keys(obj, "plan",
               {"mode", "f_rf_hz", "harmonic", "f_if_hz", "cutoff_hz",
                "sideband_order", "f_mmw_target_hz", "f_if_drive_hz",
                "max_spur_harmonic", "spur_guard_hz"});
    PlanSection plan;
    if (obj.contains("mode")) {
        if (!obj["mode"].is_string()) {
            throw ValidationError("'plan.mode' must be a string");
        }
        plan.mode = obj["mode"].get<std::string>();
        if (plan.mode != "spectroscopy" && plan.mode != "slfi") {
            throw ValidationError(
                "'plan.mode' must be 'spectroscopy' or 'slfi'");
        }
    }
    if (plan.mode == "spectroscopy") {
        plan.f_rf = require_hz(obj, "plan", "f_rf_hz");
        plan.harmonic =
            static_cast<int>(require_number(obj, "plan", "harmonic"));
        plan.f_if = require_hz(obj, "plan", "f_if_hz");
        if (obj.contains("cutoff_hz")) {
            plan.cutoff = require_hz(obj, "plan", "cutoff_hz");
        }
        if (const auto v = optional_number(obj, "plan", "sideband_order")) {
            plan.sideband_order = static_cast<int>(*v);
        }
    } else {
        plan.f_mmw_target = require_hz(obj, "plan", "f_mmw_target_hz");
        if (obj.contains("f_if_drive_hz")) {
            plan.f_if_drive = require_hz(obj, "plan", "f_if_drive_hz");
        }
    }
    if (const auto v = optional_number(obj, "plan", "max_spur_harmonic")) {
        plan.max_spur_harmonic = static_cast<int>(*v);
    }
    if (obj.contains("spur_guard_hz")) {
        plan.spur_guard = require_hz(obj, "plan", "spur_guard_hz");
    }
    return plan;
}

FitSection parse_fit(const json& obj) {
    check_keys(obj, "fit", {"kind", "data_csv", "overlay_csv"});
    FitSection fit;
    if (!obj.contains("kind") || !obj["kind"].is_string()) {
        throw ValidationError("'fit.kind' must be a string");
    }
    fit.kind = obj["kind"].get<std::string>();
    if (fit.kind != "half_quadratic" && fit.kind != "quadratic_offset" &&
        fit.kind != "resonator") {
        throw ValidationError(
            "'fit.kind' must be half_quadratic, quadratic_offset, or "
            "resonator");
    }
    if (!obj.contains("data_csv") || !obj["data_csv"].is_string()) {
        throw ValidationError("'fit.data_csv' must be a string path");
    }
    fit.data_csv = obj["data_csv"].get<std::string>();
    if (obj.contains("overlay_csv")) {
        if (!obj["overlay_csv"].is_string()) {
            throw ValidationError("'fit.overlay_csv' must be a string path");
        }
        fit.overlay_csv = obj["overlay_csv"].get<std::string>();
    }
    return fit;
}

SweepSection parse_sweep(const json& obj) {
    check_keys(obj, "sweep",
               {"r_min_a_per_w", "r_max_a_per_w", "n_points", "log_spacing"});
    SweepSection sweep;
    if (const auto v = optional_number(obj, "sweep", "r_min_a_per_w")) {
        sweep.r_min = *v;
    }
    if (const auto v = optional_number(obj, "sweep", "r_max_a_per_w")) {
        sweep.r_max = *v;
    }
    if (const auto v = optional_number(obj, "sweep", "n_points")) {
        sweep.n_points = static_cast<int>(*v);
    }
    if (obj.contains("log_spacing")) {
        if (!obj["log_spacing"].is_boolean()) {
            throw ValidationError("'sweep.log_spacing' must be a boolean");
        }
        sweep.log_spacing = obj["log_spacing"].get<bool>();
    }
    if (!(sweep.r_min > 0.0) || !(sweep.r_max > sweep.r_min) ||
        sweep.n_points < 2) {
        throw ValidationError("sweep: need 0 < r_min < r_max and n_points >= 2");
    }
    return sweep;
}

template <typename Section>
const Section& require_section(const std::optional<Section>& section,
                               const std::string& name) {
    if (!section) {
        throw ValidationError("missing required section '" + name + "'");
    }
    return *section;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open output file " + path);
    }
    return out;
}

int run_guarded(const std::function<void()>& body) {
    try {
        body();
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open config file " + path);
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config parse error: ") + e.what());
    }
    check_keys(doc, "config",
               {"photodiode", "environment", "qubit", "chain", "noise",
                "gatesim", "plan", "fit", "sweep", "seed"});
    ScenarioConfig config;
    if (doc.contains("photodiode")) {
        config.photodiode = parse_photodiode(doc["photodiode"]);
    }
    if (doc.contains("environment")) {
        config.environment = parse_environment(doc["environment"]);
    }
    if (doc.contains("qubit")) {
        config.qubit = parse_qubit(doc["qubit"]);
    }
    if (doc.contains("chain")) {
        config.chain = parse_chain(doc["chain"]);
    }
    if (doc.contains("noise")) {
        config.noise = parse_noise(doc["noise"]);
    }
    if (doc.contains("gatesim")) {
        config.gatesim = parse_gatesim(doc["gatesim"]);
    }
    if (doc.contains("plan")) {
        config.plan = parse_plan(doc["plan"]);
    }
    if (doc.contains("fit")) {
        config.fit = parse_fit(doc["fit"]);
    }
    if (doc.contains("sweep")) {
        config.sweep = parse_sweep(doc["sweep"]);
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) {
            throw ValidationError("'config.seed' must be a non-negative integer");
        }
        config.seed = doc["seed"].get<std::uint64_t>();
    }
    return config;
}

int cmd_tradeoff(const std::string& config_path, const std::string& out_csv) {
    return run_guarded([&] {
        const ScenarioConfig config = load_config(config_path);
        const auto& qubit = require_section(config.qubit, "qubit");
        const auto& env = require_section(config.environment, "environment");
        const auto& pd = require_section(config.photodiode, "photodiode");
        const auto points = tradeoff::sweep_responsivity(
            qubit, env, pd.wavelength, config.sweep.r_min, config.sweep.r_max,
            config.sweep.n_points, config.sweep.log_spacing);

        auto out = open_output(out_csv);
        out << "responsivity_A_per_W,P0_X_W,N_opt,eps_QNL,N_qubit\n";
        for (const auto& p : points) {
            out << fmt(p.responsivity) << ',' << fmt(p.optical_power_x) << ','
                << fmt(p.photons_per_gate) << ',' << fmt(p.gate_error) << ','
                << p.n_qubit << '\n';
        }

        for (const double marker : {0.84, 240.0}) {
            if (marker >= config.sweep.r_min && marker <= config.sweep.r_max) {
                const auto p =
                    tradeoff::evaluate_point(qubit, env, pd.wavelength, marker);
                std::cout << "marker R=" << fmt(p.responsivity)
                          << " A/W: P0_X=" << fmt(p.optical_power_x)
                          << " W, N_opt=" << fmt(p.photons_per_gate)
                          << ", eps_QNL=" << fmt(p.gate_error)
                          << ", N_qubit=" << p.n_qubit << "\n";
            }
        }
    });
}

int cmd_noise(const std::string& config_path, const std::string& out_csv) {
    return run_guarded([&] {
        const ScenarioConfig config = load_config(config_path);
        const auto& noise = require_section(config.noise, "noise");
        const auto& env = require_section(config.environment, "environment");

        auto out = open_output(out_csv);
        const bool with_model = noise.excess_a.has_value();
        out << "P0_W,n_eff_shot";
        if (with_model) {
            out << ",n_eff_model";
        }
        out << '\n';
        for (int i = 0; i < noise.n_points; ++i) {
            const double t =
                noise.n_points == 1
                    ? 0.0
                    : static_cast<double>(i) / (noise.n_points - 1);
            const double p0 = noise.p0_min + (noise.p0_max - noise.p0_min) * t;
            const double shot =
                p0 > 0.0 ? linkmodel::n_eff_shot(noise.responsivity, p0,
                                                 env.impedance, noise.f_rf)
                         : 0.0;
            out << fmt(p0) << ',' << fmt(shot);
            if (with_model) {
                out << ',' << fmt(*noise.excess_a * p0 * p0 + *noise.excess_b);
            }
            out << '\n';
        }
    });
}

int cmd_chain(const std::string& config_path, const std::string& out_csv) {
    return run_guarded([&] {
        const ScenarioConfig config = load_config(config_path);
        const auto& chain = require_section(config.chain, "chain");
        const auto& env = require_section(config.environment, "environment");

        auto out = open_output(out_csv);
        out << "quantity,value\n";

        std::optional<rfchain::SnrBudget> budget;
        if (chain.signal_power && chain.responsivity && chain.optical_power) {
            budget = rfchain::snr_budget(
                *chain.signal_power, *chain.responsivity, *chain.optical_power,
                env.impedance, env.stage_temperature, chain.bandwidth);
            out << "signal_power_w," << fmt(budget->signal_power) << '\n';
            out << "shot_power_w," << fmt(budget->shot_power) << '\n';
            out << "thermal_power_w," << fmt(budget->thermal_power) << '\n';
            out << "snr_in," << fmt(budget->snr_in()) << '\n';
            out << "snr_in_db," << fmt(to_db(budget->snr_in()).value) << '\n';
        }

        std::optional<double> f_total = chain.f_total;
        if (!f_total && chain.snr_out && budget) {
            f_total = budget->snr_in() / *chain.snr_out;
        }
        if (f_total) {
            out << "f_total," << fmt(*f_total) << '\n';
            out << "f_total_db," << fmt(to_db(*f_total).value) << '\n';
        }

        if (chain.g_total && chain.stages.size() == 2 && f_total) {
            const auto& pre = chain.stages[0];   // before the mixer
            const auto& post = chain.stages[1];  // after the mixer
            const double g_mixer = rfchain::mixer_conversion_gain(
                *chain.g_total, pre.gain_linear, post.gain_linear);
            out << "mixer_conversion_gain," << fmt(g_mixer) << '\n';
            out << "mixer_conversion_gain_db," << fmt(to_db(g_mixer).value)
                << '\n';
            const double f_mixer = rfchain::backout_mixer_noise_factor(
                *f_total, pre.noise_factor_linear, pre.gain_linear,
                post.noise_factor_linear, g_mixer);
            out << "mixer_noise_factor," << fmt(f_mixer) << '\n';
            out << "mixer_nf_db," << fmt(to_db(f_mixer).value) << '\n';
            const std::vector<rfchain::ChainStage> full{
                pre, {"mixer", g_mixer, f_mixer}, post};
            const double recascaded = rfchain::friis_total(full);
            out << "recascaded_f_total," << fmt(recascaded) << '\n';
            out << "recascaded_f_total_db," << fmt(to_db(recascaded).value)
                << '\n';
        } else {
            const double friis = rfchain::friis_total(chain.stages);
            out << "stages_f_total," << fmt(friis) << '\n';
            out << "stages_f_total_db," << fmt(to_db(friis).value) << '\n';
        }
    });
}

int cmd_gatesim(const std::string& config_path, const std::string& out_csv,
                std::optional<std::uint64_t> seed_override) {
    return run_guarded([&] {
        const ScenarioConfig config = load_config(config_path);
        const auto& gs = require_section(config.gatesim, "gatesim");
        const std::uint64_t seed = seed_override.value_or(config.seed);

        auto out = open_output(out_csv);
        out << "N_target,trials,mean_error,stderr,analytic_eq10\n";
        for (const double n_target : gs.n_targets) {
            const auto result = gatesim::monte_carlo_gate_error(
                n_target, gs.trials, seed, gs.variance_scale);
            out << fmt(n_target) << ',' << result.trials << ','
                << fmt(result.mean_error) << ','
                << fmt(result.std_error_of_mean) << ','
                << fmt(tradeoff::gate_error_qnl(n_target)) << '\n';
        }
    });
}

int cmd_freqplan(const std::string& config_path, const std::string& out_json) {
    return run_guarded([&] {
        const ScenarioConfig config = load_config(config_path);
        const auto& section = require_section(config.plan, "plan");

        freqplan::MixPlan plan;
        if (section.mode == "spectroscopy") {
            plan = freqplan::plan_spectroscopy(section.f_rf, section.harmonic,
                                               section.f_if, section.cutoff,
                                               section.sideband_order);
        } else {
            plan = freqplan::slfi_plan(section.f_mmw_target,
                                       section.f_if_drive);
        }
        plan.spur_margin = section.spur_guard;
        const auto spurs = freqplan::spur_check(
            plan, std::max(section.max_spur_harmonic, plan.harmonic),
            section.spur_guard);

        json doc;
        doc["mode"] = section.mode;
        doc["f_mod_hz"] = plan.f_mod.rounded_hz();
        doc["f_mod_num"] = plan.f_mod.num;
        doc["f_mod_den"] = plan.f_mod.den;
        doc["f_lo_hz"] = plan.f_lo.rounded_hz();
        doc["f_lo_num"] = plan.f_lo.num;
        doc["f_lo_den"] = plan.f_lo.den;
        doc["harmonic"] = plan.harmonic;
        doc["f_if_hz"] = plan.f_if;
        doc["f_rf_hz"] = plan.f_rf;
        doc["spur_guard_hz"] = plan.spur_margin;
        doc["propagating_tones"] = json::array();
        for (const auto& tone : plan.propagating_tones) {
            doc["propagating_tones"].push_back(
                {{"frequency_hz", tone.frequency}, {"origin", tone.origin}});
        }
        doc["spurs"] = json::array();
        for (const auto& hit : spurs) {
            doc["spurs"].push_back({{"frequency_hz", hit.spur_tone.frequency},
                                    {"origin", hit.spur_tone.origin},
                                    {"harmonic", hit.harmonic},
                                    {"offset_hz", hit.offset_hz}});
        }

        auto out = open_output(out_json);
        out << doc.dump(2) << '\n';

        std::cout << "frequency plan (" << section.mode << ")\n"
                  << "  f_mod  = " << fmt(plan.f_mod.hz()) << " Hz\n"
                  << "  f_LO   = " << fmt(plan.f_lo.hz()) << " Hz ("
                  << plan.f_lo.num << "/" << plan.f_lo.den << ")\n"
                  << "  N      = " << plan.harmonic << "\n"
                  << "  f_IF   = " << plan.f_if << " Hz\n"
                  << "  f_RF   = " << plan.f_rf << " Hz\n"
                  << "  tones  :";
        for (const auto& tone : plan.propagating_tones) {
            std::cout << ' ' << tone.frequency;
        }
        std::cout << "\n  spurs  : " << spurs.size() << "\n";
    });
}

int cmd_fit(const std::string& config_path, const std::string& out_json) {
    return run_guarded([&] {
        const ScenarioConfig config = load_config(config_path);
        const auto& section = require_section(config.fit, "fit");
        const fitting::XYSeries data = fitting::load_xy_csv(section.data_csv);

        json doc;
        std::function<double(double)> model;
        if (section.kind == "half_quadratic") {
            const auto fit = fitting::fit_half_quadratic(data);
            doc["params"] = {{"a", fit.value}};
            doc["sigmas"] = {{"a", fit.sigma}};
            model = [fit](double x) { return 0.5 * fit.value * x * x; };
        } else if (section.kind == "quadratic_offset") {
            const auto fit = fitting::fit_quadratic_offset(data);
            doc["params"] = {{"a", fit.quadratic.value}, {"b", fit.offset.value}};
            doc["sigmas"] = {{"a", fit.quadratic.sigma}, {"b", fit.offset.sigma}};
            model = [fit](double x) {
                return fit.quadratic.value * x * x + fit.offset.value;
            };
        } else {
            const auto fit = fitting::fit_resonator(data);
            doc["params"] = {{"f0", fit.f0},
                             {"q_internal", fit.q_internal},
                             {"q_external", fit.q_external},
                             {"asymmetry", fit.asymmetry},
                             {"baseline", fit.baseline},
                             {"amplitude", fit.amplitude}};
            json cov = json::array();
            json sigmas = json::object();
            const char* names[6] = {"f0",        "q_internal", "q_external",
                                    "asymmetry", "baseline",   "amplitude"};
            for (int i = 0; i < 6; ++i) {
                json row = json::array();
                for (int j = 0; j < 6; ++j) {
                    row.push_back(fit.covariance[i][j]);
                }
                cov.push_back(row);
                sigmas[names[i]] = std::sqrt(std::max(0.0, fit.covariance[i][i]));
            }
            doc["covariance"] = cov;
            doc["sigmas"] = sigmas;
            doc["residual_rms"] = fit.residual_rms;
            model = [fit](double f) {
                return fitting::resonator_model(f, fit.f0, fit.q_internal,
                                                fit.q_external, fit.asymmetry,
                                                fit.baseline, fit.amplitude);
            };
        }

        auto out = open_output(out_json);
        out << doc.dump(2) << '\n';

        if (section.overlay_csv) {
            auto overlay = open_output(*section.overlay_csv);
            overlay << "x,data,model\n";
            for (const auto& p : data.points) {
                overlay << fmt(p.x) << ',' << fmt(p.y) << ',' << fmt(model(p.x))
                        << '\n';
            }
        }
    });
}

}  // namespace photolink::scenario
