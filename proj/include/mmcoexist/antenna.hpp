// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

namespace mmcoexist {

/// Cone-plus-circle pattern: constant mainlobe gain inside the beamwidth,
/// constant sidelobe gain everywhere else. Gains are linear. beamwidth_rad of
/// 2*pi makes the pattern omnidirectional (mainlobe gain in every direction).
struct BeamPattern {
    double beamwidth_rad = 0.0;
    double mainlobe_gain = 1.0;
    double sidelobe_gain = 0.0;
    double boresight_rad = 0.0;
};

/// Throws std::invalid_argument unless 0 < beamwidth <= 2*pi and
/// mainlobe_gain >= sidelobe_gain >= 0.
void validate(const BeamPattern& pattern);

/// Mainlobe gain iff the wrapped offset from boresight is <= beamwidth/2
/// (boundary counts as mainlobe), else sidelobe gain.
double cone_gain(const BeamPattern& pattern, double direction_rad);

using BeamVector = std::vector<std::complex<double>>;

/// Dense complex matrix, row-major. Just enough linear algebra for the exact
/// gain computation.
struct CMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::complex<double>> data;

    CMatrix() = default;
    CMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}

    std::complex<double>& operator()(int r, int c) {
        return data[static_cast<std::size_t>(r) * cols + c];
    }
    const std::complex<double>& operator()(int r, int c) const {
        return data[static_cast<std::size_t>(r) * cols + c];
    }
};

struct PathComponent {
    std::complex<double> gain;  // complex path gain
    double aod_rad = 0.0;       // angle of departure
    double aoa_rad = 0.0;       // angle of arrival
};

/// Multipath description between one BS (tx_elements antennas) and one MT
/// (rx_elements antennas). paths.front() is the LOS component used for
/// beam-steering.
struct PathSet {
    std::vector<PathComponent> paths;
    int tx_elements = 1;
    int rx_elements = 1;
};

/// Half-wavelength ULA response, element m = exp(-i*pi*m*sin(angle))/sqrt(M).
/// Unit Euclidean norm by construction. Throws for num_elements < 1.
BeamVector ula_response(int num_elements, double angle_rad);

/// H = sqrt(M*N/L) * sum_l gain_l * e_rx(aoa_l) * e_tx(aod_l)^H, an NxM matrix.
CMatrix channel_matrix(const PathSet& paths);

/// |r^H H w|^2. Throws std::invalid_argument on dimension mismatch.
double total_gain_exact(const BeamVector& r, const CMatrix& h, const BeamVector& w);

/// Cone-model counterpart: los_gain_sq * G_tx(direction to rx) * G_rx(direction to tx).
double total_gain_cone(const BeamPattern& tx, const BeamPattern& rx, double tx_to_rx_rad,
                       double rx_to_tx_rad, double los_gain_sq);

/// Shared cone-model settings for every BS and every MT in a scenario.
/// Defaults: 60 deg / 90 deg beamwidths, 10 dB mainlobes, ideal (zero) sidelobes.
struct BeamConfig {
    double theta_tx_rad = 60.0 * 3.14159265358979323846 / 180.0;
    double gain_tx_mainlobe = 10.0;
    double gain_tx_sidelobe = 0.0;
    double theta_rx_rad = 90.0 * 3.14159265358979323846 / 180.0;
    double gain_rx_mainlobe = 10.0;
    double gain_rx_sidelobe = 0.0;
};

void validate(const BeamConfig& beams);

BeamPattern tx_pattern(const BeamConfig& beams, double boresight_rad);
BeamPattern rx_pattern(const BeamConfig& beams, double boresight_rad);

}  // namespace mmcoexist
