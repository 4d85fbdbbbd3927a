#pragma once

namespace causentropy {

/// SI values (CODATA 2018). Every field can be overridden, e.g. natural
/// units with k_b = hbar = c = 1.
struct PhysicalConstants {
    double hbar = 1.054571817e-34;     // J s
    double c = 299792458.0;            // m / s
    double k_b = 1.380649e-23;         // J / K
    double newton_g = 6.67430e-11;     // m^3 / (kg s^2)
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLn2 = 0.69314718055994530942;

} // namespace causentropy
