#include "photolink/linkmodel.hpp"

#include <cmath>
#include <stdexcept>

#include "photolink/constants.hpp"
#include "photolink/units.hpp"

namespace photolink::linkmodel {

namespace k = photolink::constants;

void PhotodiodeSpec::validate() const {
    if (quantum_efficiency < 0.0 || quantum_efficiency > 1.0) {
        throw std::domain_error("PhotodiodeSpec: quantum efficiency outside [0, 1]");
    }
    if (gain < 0.0) {
        throw std::domain_error("PhotodiodeSpec: gain must be >= 0");
    }
    if (!(wavelength > 0.0)) {
        throw std::domain_error("PhotodiodeSpec: wavelength must be > 0");
    }
    if (bandwidth_3db && !(*bandwidth_3db > 0.0)) {
        throw std::domain_error("PhotodiodeSpec: bandwidth must be > 0");
    }
}

void LinkEnvironment::validate() const {
    if (!(impedance > 0.0)) {
        throw std::domain_error("LinkEnvironment: impedance must be > 0");
    }
    if (std::abs(modulation_depth) > 1.0) {
        throw std::domain_error("LinkEnvironment: |modulation depth| must be <= 1");
    }
    if (stage_temperature < 0.0) {
        throw std::domain_error("LinkEnvironment: temperature must be >= 0");
    }
    if (cooling_power < 0.0) {
        throw std::domain_error("LinkEnvironment: cooling power must be >= 0");
    }
}

double instantaneous_optical_power(double p0_w, double modulation_depth,
                                   double f_mod_hz, double time_s) {
    if (p0_w < 0.0) {
        throw std::domain_error("instantaneous_optical_power: P0 must be >= 0");
    }
    if (std::abs(modulation_depth) > 1.0) {
        throw std::domain_error(
            "instantaneous_optical_power: |modulation depth| must be <= 1");
    }
    return p0_w * (1.0 + modulation_depth * std::cos(angular(f_mod_hz) * time_s));
}

double quantum_responsivity(double wavelength_m) {
    if (!(wavelength_m > 0.0)) {
        throw std::domain_error("quantum_responsivity: wavelength must be > 0");
    }
    return k::electron_charge * wavelength_m / (k::planck * k::speed_of_light);
}

double total_responsivity(const PhotodiodeSpec& pd) {
    pd.validate();
    return pd.gain * pd.quantum_efficiency * quantum_responsivity(pd.wavelength);
}

double microwave_power(double responsivity, double p0_w,
                       double modulation_depth, double impedance) {
    return 0.5 * responsivity * responsivity * p0_w * p0_w *
           modulation_depth * modulation_depth * impedance;
}

double power_efficiency(double responsivity, double p0_w,
                        double modulation_depth, double impedance) {
    if (!(p0_w > 0.0)) {
        throw std::domain_error("power_efficiency: P0 must be > 0");
    }
    return 0.5 * responsivity * responsivity * modulation_depth *
           modulation_depth * impedance * p0_w;
}

double power_efficiency_via_noise(double quantum_efficiency,
                                  double modulation_depth, double f_rf_hz,
                                  double f_opt_hz, double n_eff) {
    if (!(f_opt_hz > 0.0)) {
        throw std::domain_error("power_efficiency_via_noise: optical frequency must be > 0");
    }
    return quantum_efficiency * modulation_depth * modulation_depth *
           (f_rf_hz / f_opt_hz) * n_eff;
}

double shot_noise_psd_ds(double responsivity, double p0_w) {
    if (responsivity < 0.0 || p0_w < 0.0) {
        throw std::domain_error("shot_noise_psd_ds: inputs must be >= 0");
    }
    return k::electron_charge * responsivity * p0_w;
}

double bose_einstein(double temperature_k, double frequency_hz) {
    if (!(frequency_hz > 0.0)) {
        throw std::domain_error("bose_einstein: frequency must be > 0");
    }
    if (temperature_k < 0.0) {
        throw std::domain_error("bose_einstein: temperature must be >= 0");
    }
    if (temperature_k == 0.0) {
        return 0.0;  // ground state limit
    }
    const double x = k::reduced_planck * angular(frequency_hz) /
                     (k::boltzmann * temperature_k);
    return 1.0 / std::expm1(x);
}

double thermal_noise_psd_ds(double temperature_k, double frequency_hz,
                            double impedance) {
    if (!(impedance > 0.0)) {
        throw std::domain_error("thermal_noise_psd_ds: impedance must be > 0");
    }
    const double occupation = bose_einstein(temperature_k, frequency_hz);
    return k::reduced_planck * angular(frequency_hz) *
           (1.0 + 2.0 * occupation) / impedance;
}

double n_eff_shot(double responsivity, double p0_w, double impedance,
                  double frequency_hz) {
    if (!(frequency_hz > 0.0)) {
        throw std::domain_error("n_eff_shot: frequency must be > 0");
    }
    return 0.5 * shot_noise_psd_ds(responsivity, p0_w) * impedance /
           (k::reduced_planck * angular(frequency_hz));
}

NoiseReport noise_report(double responsivity, double p0_w,
                         double temperature_k, double frequency_hz,
                         double impedance) {
    NoiseReport report;
    report.shot_psd_ds = shot_noise_psd_ds(responsivity, p0_w);
    report.thermal_psd_ds =
        thermal_noise_psd_ds(temperature_k, frequency_hz, impedance);
    report.n_eff = n_eff_shot(responsivity, p0_w, impedance, frequency_hz);
    report.n_thermal = bose_einstein(temperature_k, frequency_hz);
    return report;
}

}  // namespace photolink::linkmodel
