// SPDX-License-Identifier: Apache-2.0

#include "mmcoexist/linkbudget.hpp"

#include <cmath>
#include <stdexcept>

#include "mmcoexist/units.hpp"

namespace mmcoexist {

double pathloss(double distance_m, double carrier_freq_hz, double alpha) {
    if (!(distance_m > 0.0)) {
        throw std::domain_error("pathloss: distance must be > 0 m");
    }
    if (!(carrier_freq_hz > 0.0)) {
        throw std::domain_error("pathloss: carrier frequency must be > 0 Hz");
    }
    const double amplitude = kSpeedOfLightMps / (4.0 * kPi * carrier_freq_hz);
    return amplitude * amplitude / std::pow(distance_m, alpha);
}

LinkPower received_power(double tx_power_watts, double total_gain, double pathloss_linear) {
    return {tx_power_watts * total_gain * pathloss_linear};
}

RateResult rate(LinkPower signal, LinkPower interference, double bandwidth_hz,
                double noise_psd_w_hz) {
    if (!(bandwidth_hz > 0.0)) {
        throw std::invalid_argument("rate: bandwidth_hz must be > 0");
    }
    if (!(noise_psd_w_hz > 0.0)) {
        throw std::invalid_argument("rate: noise_psd_w_hz must be > 0");
    }
    RateResult result;
    result.interference_watts = interference.watts;
    result.sinr_linear = signal.watts / (noise_psd_w_hz * bandwidth_hz + interference.watts);
    result.bits_per_second = bandwidth_hz * std::log2(1.0 + result.sinr_linear);
    return result;
}

LinkPower interference_at(const Scenario& scenario, const BeamConfig& beams,
                          std::span<const int> active_set, int k, RxMode mode) {
    const std::size_t victim = static_cast<std::size_t>(k);
    const NodePlacement& victim_mt = scenario.mt[victim];
    const double tx_power_watts = dbm_to_watts(scenario.params.tx_power_dbm);
    const BeamPattern victim_rx = rx_pattern(beams, victim_mt.boresight_rad);

    double total = 0.0;
    for (int j : active_set) {
        if (j == k) {
            continue;
        }
        const NodePlacement& bs = scenario.bs[static_cast<std::size_t>(j)];
        const double tx_gain =
            cone_gain(tx_pattern(beams, bs.boresight_rad), angle_of(bs.position, victim_mt.position));
        const double rx_gain = mode == RxMode::directional
                                   ? cone_gain(victim_rx, angle_of(victim_mt.position, bs.position))
                                   : 1.0;
        const double loss = pathloss(distance(victim_mt.position, bs.position),
                                     scenario.params.carrier_freq_hz,
                                     scenario.params.pathloss_exponent);
        total += tx_power_watts * tx_gain * rx_gain * loss;
    }
    return {total};
}

}  // namespace mmcoexist
