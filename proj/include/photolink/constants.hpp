#pragma once

#include <numbers>

namespace photolink::constants {

// CODATA 2018 exact values (SI redefinition).
inline constexpr double electron_charge = 1.602176634e-19;  // C
inline constexpr double reduced_planck = 1.054571817e-34;   // J*s
inline constexpr double planck = 2.0 * std::numbers::pi * reduced_planck;  // J*s
inline constexpr double boltzmann = 1.380649e-23;  // J/K
inline constexpr double speed_of_light = 299792458.0;  // m/s

}  // namespace photolink::constants
