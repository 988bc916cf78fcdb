// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "mmcoexist/antenna.hpp"
#include "mmcoexist/deployment.hpp"

namespace mmcoexist {

/// Linear received power. Internal computations stay in watts; dBm only at
/// I/O boundaries.
struct LinkPower {
    double watts = 0.0;
};

struct RateResult {
    double bits_per_second = 0.0;
    double sinr_linear = 0.0;
    double interference_watts = 0.0;
};

/// Free-space-referenced pathloss (c/(4*pi*fc))^2 / d^alpha, linear.
/// Throws std::domain_error for d <= 0 (co-located nodes are invalid input).
double pathloss(double distance_m, double carrier_freq_hz, double alpha);

LinkPower received_power(double tx_power_watts, double total_gain, double pathloss_linear);

/// Shannon rate W*log2(1 + S/(N0*W + I)).
RateResult rate(LinkPower signal, LinkPower interference, double bandwidth_hz,
                double noise_psd_w_hz);

/// How the victim MT listens while receiving data.
enum class RxMode {
    directional,  // its data Rx beam (boresight at its own BS)
    omni,         // unity gain in every direction
};

/// Aggregate interference at MT_k from every transmitting BS j != k in
/// active_set, through the cone model. Terms accumulate in the order of
/// active_set.
LinkPower interference_at(const Scenario& scenario, const BeamConfig& beams,
                          std::span<const int> active_set, int k, RxMode mode);

}  // namespace mmcoexist
