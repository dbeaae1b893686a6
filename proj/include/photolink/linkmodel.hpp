#pragma once

#include <optional>

namespace photolink::linkmodel {

/// Photodiode description. total_responsivity() = G * eta_q * e0*lambda/(h*c).
struct PhotodiodeSpec {
    double quantum_efficiency{1.0};  // 0..1
    double gain{1.0};                // dimensionless >= 0
    double wavelength{1550e-9};      // m
    std::optional<double> bandwidth_3db{};  // Hz

    void validate() const;
};

struct LinkEnvironment {
    double impedance{50.0};          // ohm
    double modulation_depth{1.0};    // -1..1, defaults to full modulation
    double stage_temperature{4.0};   // K
    double cooling_power{10e-6};     // W

    void validate() const;
};

/// Current-noise PSDs stored double-sided in A^2/Hz; single_sided_* accessors
/// apply the factor of two.
struct NoiseReport {
    double shot_psd_ds{0.0};     // A^2/Hz
    double thermal_psd_ds{0.0};  // A^2/Hz
    double n_eff{0.0};           // photons
    double n_thermal{0.0};       // photons

    double shot_psd_ss() const { return 2.0 * shot_psd_ds; }
    double thermal_psd_ss() const { return 2.0 * thermal_psd_ds; }
};

double instantaneous_optical_power(double p0_w, double modulation_depth,
                                   double f_mod_hz, double time_s);

double quantum_responsivity(double wavelength_m);

double total_responsivity(const PhotodiodeSpec& pd);

double microwave_power(double responsivity, double p0_w,
                       double modulation_depth, double impedance);

double power_efficiency(double responsivity, double p0_w,
                        double modulation_depth, double impedance);

double power_efficiency_via_noise(double quantum_efficiency,
                                  double modulation_depth, double f_rf_hz,
                                  double f_opt_hz, double n_eff);

double shot_noise_psd_ds(double responsivity, double p0_w);

double bose_einstein(double temperature_k, double frequency_hz);

double thermal_noise_psd_ds(double temperature_k, double frequency_hz,
                            double impedance);

double n_eff_shot(double responsivity, double p0_w, double impedance,
                  double frequency_hz);

NoiseReport noise_report(double responsivity, double p0_w,
                         double temperature_k, double frequency_hz,
                         double impedance);

}  // namespace photolink::linkmodel
