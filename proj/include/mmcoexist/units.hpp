// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <stdexcept>

namespace mmcoexist {

inline constexpr double kSpeedOfLightMps = 299792458.0;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

inline double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

// Defined only for strictly positive power.
inline double watts_to_dbm(double watts) {
    if (!(watts > 0.0)) {
        throw std::domain_error("watts_to_dbm: power must be > 0 W");
    }
    return 10.0 * std::log10(watts * 1e3);
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double value) {
    if (!(value > 0.0)) {
        throw std::domain_error("linear_to_db: value must be > 0");
    }
    return 10.0 * std::log10(value);
}

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

// Wraps an angle to [-pi, pi].
inline double wrap_to_pi(double angle_rad) { return std::remainder(angle_rad, kTwoPi); }

// Wraps an angle to [0, 2*pi).
inline double wrap_to_2pi(double angle_rad) {
    double a = std::fmod(angle_rad, kTwoPi);
    if (a < 0.0) {
        a += kTwoPi;
    }
    return a;
}

}  // namespace mmcoexist
