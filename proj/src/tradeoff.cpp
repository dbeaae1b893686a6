#include "photolink/tradeoff.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "photolink/constants.hpp"
#include "photolink/units.hpp"

namespace photolink::tradeoff {

namespace k = photolink::constants;

void QubitDriveSpec::validate() const {
    if (!(coupling_capacitance > 0.0) ||
        !(coupling_capacitance < total_capacitance)) {
        throw std::domain_error("QubitDriveSpec: need 0 < C_xy < C_total");
    }
    if (!(qubit_frequency > 0.0)) {
        throw std::domain_error("QubitDriveSpec: qubit frequency must be > 0");
    }
    if (!(gate_duration > 0.0)) {
        throw std::domain_error("QubitDriveSpec: gate duration must be > 0");
    }
}

double rabi_per_volt(const QubitDriveSpec& q) {
    q.validate();
    const double transmon_impedance =
        1.0 / (angular(q.qubit_frequency) * q.total_capacitance);
    const double zero_point_charge =
        std::sqrt(k::reduced_planck / (2.0 * transmon_impedance));
    return (q.coupling_capacitance / q.total_capacitance) * zero_point_charge /
           k::reduced_planck;
}

double optical_power_for_x_gate(const QubitDriveSpec& q, double responsivity,
                                double impedance) {
    if (!(responsivity > 0.0) || !(impedance > 0.0)) {
        throw std::domain_error(
            "optical_power_for_x_gate: responsivity and impedance must be > 0");
    }
    const double v_pi = std::numbers::pi / (rabi_per_volt(q) * q.gate_duration);
    return v_pi / (responsivity * impedance);
}

double photons_in_pulse(double p0_w, double duration_s, double wavelength_m) {
    if (p0_w < 0.0 || !(duration_s > 0.0) || !(wavelength_m > 0.0)) {
        throw std::domain_error("photons_in_pulse: invalid inputs");
    }
    return p0_w * duration_s * wavelength_m / (k::planck * k::speed_of_light);
}

double gate_error_qnl(double photons_total) {
    if (!(photons_total > 0.0)) {
        throw std::domain_error("gate_error_qnl: photon count must be > 0");
    }
    const double quarter_pi_sq = std::numbers::pi * std::numbers::pi / 4.0;
    return quarter_pi_sq / photons_total;
}

std::int64_t n_qubit(double cooling_power_w, double power_per_op_w) {
    if (!(power_per_op_w > 0.0) || !(cooling_power_w > 0.0)) {
        throw std::domain_error("n_qubit: powers must be > 0");
    }
    return static_cast<std::int64_t>(
        std::floor(cooling_power_w / power_per_op_w));
}

double cooling_power_at(double temperature_k, double p_ref_w, double t_ref_k) {
    if (!(temperature_k > 0.0) || !(p_ref_w > 0.0) || !(t_ref_k > 0.0)) {
        throw std::domain_error("cooling_power_at: inputs must be > 0");
    }
    const double ratio = temperature_k / t_ref_k;
    return p_ref_w * ratio * ratio;
}

TradeoffPoint evaluate_point(const QubitDriveSpec& q,
                             const linkmodel::LinkEnvironment& env,
                             double wavelength_m, double responsivity) {
    env.validate();
    TradeoffPoint point;
    point.responsivity = responsivity;
    point.optical_power_x =
        optical_power_for_x_gate(q, responsivity, env.impedance);
    point.photons_per_gate =
        photons_in_pulse(point.optical_power_x, q.gate_duration, wavelength_m);
    point.gate_error = gate_error_qnl(point.photons_per_gate);
    point.n_qubit = n_qubit(env.cooling_power, point.optical_power_x);
    return point;
}

std::vector<TradeoffPoint> sweep_responsivity(
    const QubitDriveSpec& q, const linkmodel::LinkEnvironment& env,
    double wavelength_m, double r_min, double r_max, int n_points,
    bool log_spacing) {
    if (!(r_min > 0.0) || !(r_max > r_min)) {
        throw std::domain_error("sweep_responsivity: need 0 < r_min < r_max");
    }
    if (n_points < 2) {
        throw std::domain_error("sweep_responsivity: need at least 2 points");
    }
    std::vector<TradeoffPoint> points;
    points.reserve(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        const double t = static_cast<double>(i) / (n_points - 1);
        const double r = log_spacing
                             ? r_min * std::pow(r_max / r_min, t)
                             : r_min + (r_max - r_min) * t;
        points.push_back(evaluate_point(q, env, wavelength_m, r));
    }
    return points;
}

}  // namespace photolink::tradeoff
