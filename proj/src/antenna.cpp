// SPDX-License-Identifier: Apache-2.0

#include "mmcoexist/antenna.hpp"

#include <cmath>
#include <stdexcept>

#include "mmcoexist/units.hpp"

namespace mmcoexist {

void validate(const BeamPattern& pattern) {
    if (!(pattern.beamwidth_rad > 0.0) || pattern.beamwidth_rad > kTwoPi) {
        throw std::invalid_argument("BeamPattern: beamwidth_rad must be in (0, 2*pi]");
    }
    if (!(pattern.sidelobe_gain >= 0.0)) {
        throw std::invalid_argument("BeamPattern: sidelobe_gain must be >= 0");
    }
    if (!(pattern.mainlobe_gain >= pattern.sidelobe_gain)) {
        throw std::invalid_argument("BeamPattern: mainlobe_gain must be >= sidelobe_gain");
    }
}

double cone_gain(const BeamPattern& pattern, double direction_rad) {
    // remainder() lands in [-pi, pi], so a 2*pi beamwidth covers every offset.
    const double offset = std::abs(std::remainder(direction_rad - pattern.boresight_rad, kTwoPi));
    return offset <= 0.5 * pattern.beamwidth_rad ? pattern.mainlobe_gain : pattern.sidelobe_gain;
}

BeamVector ula_response(int num_elements, double angle_rad) {
    if (num_elements < 1) {
        throw std::invalid_argument("ula_response: num_elements must be >= 1");
    }
    BeamVector e(static_cast<std::size_t>(num_elements));
    const double scale = 1.0 / std::sqrt(static_cast<double>(num_elements));
    const double phase_step = -kPi * std::sin(angle_rad);
    for (int m = 0; m < num_elements; ++m) {
        e[static_cast<std::size_t>(m)] = std::polar(scale, phase_step * m);
    }
    return e;
}

CMatrix channel_matrix(const PathSet& paths) {
    if (paths.paths.empty()) {
        throw std::invalid_argument("channel_matrix: at least one path required");
    }
    if (paths.tx_elements < 1 || paths.rx_elements < 1) {
        throw std::invalid_argument("channel_matrix: element counts must be >= 1");
    }
    const int m_tx = paths.tx_elements;
    const int n_rx = paths.rx_elements;
    const double num_paths = static_cast<double>(paths.paths.size());
    const double scale = std::sqrt(static_cast<double>(m_tx) * n_rx / num_paths);

    CMatrix h(n_rx, m_tx);
    for (const PathComponent& path : paths.paths) {
        const BeamVector e_tx = ula_response(m_tx, path.aod_rad);
        const BeamVector e_rx = ula_response(n_rx, path.aoa_rad);
        for (int n = 0; n < n_rx; ++n) {
            const std::complex<double> row_factor = scale * path.gain * e_rx[n];
            for (int m = 0; m < m_tx; ++m) {
                h(n, m) += row_factor * std::conj(e_tx[m]);
            }
        }
    }
    return h;
}

double total_gain_exact(const BeamVector& r, const CMatrix& h, const BeamVector& w) {
    if (static_cast<int>(r.size()) != h.rows || static_cast<int>(w.size()) != h.cols) {
        throw std::invalid_argument("total_gain_exact: vector/matrix dimensions do not conform");
    }
    std::complex<double> acc{0.0, 0.0};
    for (int n = 0; n < h.rows; ++n) {
        std::complex<double> row{0.0, 0.0};
        for (int m = 0; m < h.cols; ++m) {
            row += h(n, m) * w[static_cast<std::size_t>(m)];
        }
        acc += std::conj(r[static_cast<std::size_t>(n)]) * row;
    }
    return std::norm(acc);
}

double total_gain_cone(const BeamPattern& tx, const BeamPattern& rx, double tx_to_rx_rad,
                       double rx_to_tx_rad, double los_gain_sq) {
    return los_gain_sq * cone_gain(tx, tx_to_rx_rad) * cone_gain(rx, rx_to_tx_rad);
}

void validate(const BeamConfig& beams) {
    validate(BeamPattern{beams.theta_tx_rad, beams.gain_tx_mainlobe, beams.gain_tx_sidelobe, 0.0});
    validate(BeamPattern{beams.theta_rx_rad, beams.gain_rx_mainlobe, beams.gain_rx_sidelobe, 0.0});
}

BeamPattern tx_pattern(const BeamConfig& beams, double boresight_rad) {
    return {beams.theta_tx_rad, beams.gain_tx_mainlobe, beams.gain_tx_sidelobe, boresight_rad};
}

BeamPattern rx_pattern(const BeamConfig& beams, double boresight_rad) {
    return {beams.theta_rx_rad, beams.gain_rx_mainlobe, beams.gain_rx_sidelobe, boresight_rad};
}

}  // namespace mmcoexist
