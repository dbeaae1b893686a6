#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "photolink/freqplan.hpp"
#include "photolink/linkmodel.hpp"
#include "photolink/rfchain.hpp"
#include "photolink/tradeoff.hpp"

namespace photolink::scenario {

/// Config file problems (unknown keys, missing sections, bad values).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoiseSection {
    double responsivity{0.05};
    double f_rf{80e9};
    double p0_min{0.5e-3};
    double p0_max{8.7e-3};
    int n_points{50};
    std::optional<double> excess_a{};  // photons/W^2
    std::optional<double> excess_b{};  // photons
};

struct ChainSection {
    std::vector<rfchain::ChainStage> stages;
    std::optional<double> g_total{};
    std::optional<double> f_total{};
    std::optional<double> snr_out{};
    std::optional<double> signal_power{};
    std::optional<double> responsivity{};
    std::optional<double> optical_power{};
    double bandwidth{21e9};
};

struct GatesimSection {
    std::vector<double> n_targets{1e3, 1e4, 1e5};
    std::uint64_t trials{1'000'000};
    double variance_scale{1.0};
};

struct PlanSection {
    std::string mode{"spectroscopy"};  // or "slfi"
    freqplan::Hz f_rf{80'000'000'000};
    int harmonic{8};
    freqplan::Hz f_if{500'000'000};
    freqplan::Hz cutoff{freqplan::kWr10CutoffHz};
    int sideband_order{2};
    freqplan::Hz f_mmw_target{0};
    freqplan::Hz f_if_drive{50'000'000};
    int max_spur_harmonic{16};
    freqplan::Hz spur_guard{10'000'000};
};

struct FitSection {
    std::string kind;  // half_quadratic | quadratic_offset | resonator
    std::string data_csv;
    std::optional<std::string> overlay_csv{};
};

struct SweepSection {
    double r_min{0.1};
    double r_max{1000.0};
    int n_points{200};
    bool log_spacing{true};
};

struct ScenarioConfig {
    std::optional<linkmodel::PhotodiodeSpec> photodiode{};
    std::optional<linkmodel::LinkEnvironment> environment{};
    std::optional<tradeoff::QubitDriveSpec> qubit{};
    std::optional<ChainSection> chain{};
    std::optional<NoiseSection> noise{};
    std::optional<GatesimSection> gatesim{};
    std::optional<PlanSection> plan{};
    std::optional<FitSection> fit{};
    SweepSection sweep{};
    std::uint64_t seed{0};
};

/// Parses and validates a config file; unknown keys are rejected with the
/// offending key path in the message.
ScenarioConfig load_config(const std::string& path);

int cmd_tradeoff(const std::string& config_path, const std::string& out_csv);
int cmd_noise(const std::string& config_path, const std::string& out_csv);
int cmd_chain(const std::string& config_path, const std::string& out_csv);
int cmd_gatesim(const std::string& config_path, const std::string& out_csv,
                std::optional<std::uint64_t> seed_override = {});
int cmd_freqplan(const std::string& config_path, const std::string& out_json);
int cmd_fit(const std::string& config_path, const std::string& out_json);

}  // namespace photolink::scenario
