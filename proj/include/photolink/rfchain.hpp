#pragma once

#include <span>
#include <string>
#include <vector>

namespace photolink::rfchain {

struct ChainStage {
    std::string label;
    double gain_linear{1.0};          // > 0
    double noise_factor_linear{1.0};  // >= 1

    static ChainStage from_db(std::string label, double gain_db,
                              double noise_figure_db);
    void validate() const;
};

/// In-band power bookkeeping for the detection chain. Shot noise here is
/// single-sided (2*e0*I), bridging from the double-sided PSDs in linkmodel.
struct SnrBudget {
    double signal_power{0.0};   // W
    double shot_power{0.0};     // W
    double thermal_power{0.0};  // W
    double bandwidth{0.0};      // Hz

    double snr_in() const;
};

double friis_total(std::span<const ChainStage> stages);

double backout_mixer_noise_factor(double f_total, double f_mmw, double g_mmw,
                                  double f_uw, double g_mixer);

double mixer_conversion_gain(double g_total, double g_mmw, double g_uw);

SnrBudget snr_budget(double signal_w, double responsivity, double p0_w,
                     double impedance, double temperature_k,
                     double bandwidth_hz);

double snr_in(double signal_w, double responsivity, double p0_w,
              double impedance, double temperature_k, double bandwidth_hz);

/// Back out the total insertion loss from the 1/2*a*x^2 power-fit
/// coefficient. Values above unity are physically suspect for a passive
/// chain; `suspicious` is set but the value is still returned.
double insertion_loss_from_fit(double fit_coefficient, double responsivity,
                               double impedance, bool* suspicious = nullptr);

double n_eff_from_measured_psd(double s_ss_if_w_per_hz, double g_total,
                               double impedance, double f_rf_hz);

}  // namespace photolink::rfchain
