#include "photolink/rfchain.hpp"

#include <cmath>
#include <stdexcept>

#include "photolink/constants.hpp"
#include "photolink/units.hpp"

namespace photolink::rfchain {

namespace k = photolink::constants;

ChainStage ChainStage::from_db(std::string label, double gain_db,
                               double noise_figure_db) {
    ChainStage stage{std::move(label), to_linear(Decibel{gain_db}),
                     to_linear(Decibel{noise_figure_db})};
    stage.validate();
    return stage;
}

void ChainStage::validate() const {
    if (!(gain_linear > 0.0)) {
        throw std::domain_error("ChainStage '" + label + "': gain must be > 0");
    }
    if (!(noise_factor_linear >= 1.0)) {
        throw std::domain_error("ChainStage '" + label +
                                "': noise factor must be >= 1");
    }
}

double SnrBudget::snr_in() const {
    const double noise = shot_power + thermal_power;
    if (!(noise > 0.0)) {
        throw std::domain_error("SnrBudget: no noise power, SNR undefined");
    }
    return signal_power / noise;
}

double friis_total(std::span<const ChainStage> stages) {
    if (stages.empty()) {
        throw std::domain_error("friis_total: empty chain");
    }
    double total = stages[0].noise_factor_linear;
    double gain_product = stages[0].gain_linear;
    for (std::size_t i = 1; i < stages.size(); ++i) {
        stages[i].validate();
        total += (stages[i].noise_factor_linear - 1.0) / gain_product;
        gain_product *= stages[i].gain_linear;
    }
    return total;
}

double backout_mixer_noise_factor(double f_total, double f_mmw, double g_mmw,
                                  double f_uw, double g_mixer) {
    if (!(g_mmw > 0.0) || !(g_mixer > 0.0)) {
        throw std::domain_error(
            "backout_mixer_noise_factor: gains must be > 0");
    }
    const double f_mixer =
        1.0 + g_mmw * (f_total - f_mmw) - (f_uw - 1.0) / g_mixer;
    if (f_mixer < 1.0) {
        throw std::domain_error(
            "backout_mixer_noise_factor: inputs inconsistent with Friis "
            "cascade (backed-out noise factor < 1)");
    }
    return f_mixer;
}

double mixer_conversion_gain(double g_total, double g_mmw, double g_uw) {
    if (!(g_total > 0.0) || !(g_mmw > 0.0) || !(g_uw > 0.0)) {
        throw std::domain_error("mixer_conversion_gain: gains must be > 0");
    }
    return g_total / (g_mmw * g_uw);
}

SnrBudget snr_budget(double signal_w, double responsivity, double p0_w,
                     double impedance, double temperature_k,
                     double bandwidth_hz) {
    if (signal_w < 0.0 || responsivity < 0.0 || p0_w < 0.0 ||
        !(impedance > 0.0) || temperature_k < 0.0 || !(bandwidth_hz > 0.0)) {
        throw std::domain_error("snr_budget: invalid inputs");
    }
    SnrBudget budget;
    budget.signal_power = signal_w;
    budget.bandwidth = bandwidth_hz;
    // Single-sided 2*e0*I shot noise current PSD dissipated in Z0.
    budget.shot_power = 2.0 * k::electron_charge * responsivity * p0_w *
                        impedance * bandwidth_hz;
    budget.thermal_power = k::boltzmann * temperature_k * bandwidth_hz;
    return budget;
}

double snr_in(double signal_w, double responsivity, double p0_w,
              double impedance, double temperature_k, double bandwidth_hz) {
    return snr_budget(signal_w, responsivity, p0_w, impedance, temperature_k,
                      bandwidth_hz)
        .snr_in();
}

double insertion_loss_from_fit(double fit_coefficient, double responsivity,
                               double impedance, bool* suspicious) {
    if (!(fit_coefficient > 0.0) || !(responsivity > 0.0) ||
        !(impedance > 0.0)) {
        throw std::domain_error("insertion_loss_from_fit: inputs must be > 0");
    }
    const double loss =
        fit_coefficient / (responsivity * responsivity * impedance);
    if (suspicious != nullptr) {
        *suspicious = loss > 1.0;
    }
    return loss;
}

double n_eff_from_measured_psd(double s_ss_if_w_per_hz, double g_total,
                               double impedance, double f_rf_hz) {
    if (s_ss_if_w_per_hz < 0.0 || !(g_total > 0.0) || !(impedance > 0.0) ||
        !(f_rf_hz > 0.0)) {
        throw std::domain_error("n_eff_from_measured_psd: invalid inputs");
    }
    const double s_ds_rf = s_ss_if_w_per_hz / (2.0 * g_total * impedance);
    return 0.5 * s_ds_rf * impedance /
           (k::reduced_planck * angular(f_rf_hz));
}

}  // namespace photolink::rfchain
