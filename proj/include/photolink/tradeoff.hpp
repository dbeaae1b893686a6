#pragma once

#include <cstdint>
#include <vector>

#include "photolink/linkmodel.hpp"

namespace photolink::tradeoff {

/// Capacitively coupled two-level drive line. rabi_per_volt() is derived
/// from the capacitance divider and the zero-point charge.
struct QubitDriveSpec {
    double coupling_capacitance{0.3e-15};  // F
    double total_capacitance{200e-15};     // F
    double qubit_frequency{5e9};           // Hz
    double gate_duration{50e-9};           // s

    void validate() const;
};

struct TradeoffPoint {
    double responsivity{0.0};      // A/W
    double optical_power_x{0.0};   // W, optical power for one X-gate
    double photons_per_gate{0.0};  // optical photons in the pulse
    double gate_error{0.0};        // quantum-noise-limited probability
    std::int64_t n_qubit{0};       // floor(P_cool / P0_X)
};

double rabi_per_volt(const QubitDriveSpec& q);  // rad/(s*V)

double optical_power_for_x_gate(const QubitDriveSpec& q, double responsivity,
                                double impedance);

double photons_in_pulse(double p0_w, double duration_s, double wavelength_m);

double gate_error_qnl(double photons_total);

std::int64_t n_qubit(double cooling_power_w, double power_per_op_w);

double cooling_power_at(double temperature_k, double p_ref_w, double t_ref_k);

TradeoffPoint evaluate_point(const QubitDriveSpec& q,
                             const linkmodel::LinkEnvironment& env,
                             double wavelength_m, double responsivity);

std::vector<TradeoffPoint> sweep_responsivity(
    const QubitDriveSpec& q, const linkmodel::LinkEnvironment& env,
    double wavelength_m, double r_min, double r_max, int n_points,
    bool log_spacing = true);

}  // namespace photolink::tradeoff
