#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

// dB always means power dB (10*log10). Voltage-like quantities are squared
// into power before conversion. Frequencies are plain cycles-per-second f;
// formulas needing the angular frequency compute 2*pi*f at the point of use.
namespace photolink {

struct Decibel {
    double value{0.0};
};

inline Decibel to_db(double linear_power_ratio) {
    if (!(linear_power_ratio > 0.0)) {
        throw std::domain_error("to_db: power ratio must be > 0");
    }
    return Decibel{10.0 * std::log10(linear_power_ratio)};
}

inline double to_linear(Decibel db) {
    return std::pow(10.0, db.value / 10.0);
}

inline double angular(double frequency_hz) {
    if (!std::isfinite(frequency_hz)) {
        throw std::domain_error("angular: frequency must be finite");
    }
    return 2.0 * std::numbers::pi * frequency_hz;
}

}  // namespace photolink
