// SPDX-License-Identifier: Apache-2.0

#include "mmcoexist/access.hpp"

#include <numeric>
#include <stdexcept>

#include "mmcoexist/units.hpp"

namespace mmcoexist {

AccessScheme make_scheme(SchemeId id, double threshold_omni_dbm, double threshold_dir_dbm) {
    AccessScheme scheme;
    scheme.ed_threshold_omni_dbm = threshold_omni_dbm;
    scheme.ed_threshold_dir_dbm = threshold_dir_dbm;
    switch (id) {
        case SchemeId::omni_lbt:
            scheme.bs_sense = SenseMode::omni;
            break;
        case SchemeId::dir_lbt:
            scheme.bs_sense = SenseMode::directional;
            break;
        case SchemeId::omni_lbt_omni_lbr:
            scheme.bs_sense = SenseMode::omni;
            scheme.mt_sense = SenseMode::omni;
            break;
        case SchemeId::omni_lbt_dir_lbr:
            scheme.bs_sense = SenseMode::omni;
            scheme.mt_sense = SenseMode::directional;
            break;
        case SchemeId::dir_lbt_omni_lbr:
            scheme.bs_sense = SenseMode::directional;
            scheme.mt_sense = SenseMode::omni;
            break;
        case SchemeId::dir_lbt_dir_lbr:
            scheme.bs_sense = SenseMode::directional;
            scheme.mt_sense = SenseMode::directional;
            break;
    }
    return scheme;
}

std::string scheme_name(SchemeId id) {
    switch (id) {
        case SchemeId::omni_lbt: return "omni-lbt";
        case SchemeId::dir_lbt: return "dir-lbt";
        case SchemeId::omni_lbt_omni_lbr: return "omni-lbt-omni-lbr";
        case SchemeId::omni_lbt_dir_lbr: return "omni-lbt-dir-lbr";
        case SchemeId::dir_lbt_omni_lbr: return "dir-lbt-omni-lbr";
        case SchemeId::dir_lbt_dir_lbr: return "dir-lbt-dir-lbr";
    }
    throw std::invalid_argument("scheme_name: unknown scheme id");
}

std::optional<SchemeId> scheme_from_name(std::string_view name) {
    for (SchemeId id : kAllSchemes) {
        if (scheme_name(id) == name) {
            return id;
        }
    }
    return std::nullopt;
}

LinkPower sense_at_bs(const Scenario& scenario, const BeamConfig& beams,
                      std::span<const int> active_set, int j, SenseMode mode) {
    const NodePlacement& listener = scenario.bs[static_cast<std::size_t>(j)];
    const double tx_power_watts = dbm_to_watts(scenario.params.tx_power_dbm);
    // dirLBT senses with the Tx beam the BS is about to transmit with.
    const BeamPattern listener_beam = tx_pattern(beams, listener.boresight_rad);

    double total = 0.0;
    for (int i : active_set) {
        if (i == j) {
            continue;
        }
        const NodePlacement& tx = scenario.bs[static_cast<std::size_t>(i)];
        const double tx_gain =
            cone_gain(tx_pattern(beams, tx.boresight_rad), angle_of(tx.position, listener.position));
        const double sense_gain =
            mode == SenseMode::directional
                ? cone_gain(listener_beam, angle_of(listener.position, tx.position))
                : 1.0;
        const double loss =
            pathloss(distance(tx.position, listener.position), scenario.params.carrier_freq_hz,
                     scenario.params.pathloss_exponent);
        total += tx_power_watts * tx_gain * loss * sense_gain;
    }
    return {total};
}

LinkPower sense_at_mt(const Scenario& scenario, const BeamConfig& beams,
                      std::span<const int> active_set, int k, SenseMode mode) {
    const NodePlacement& listener = scenario.mt[static_cast<std::size_t>(k)];
    const double tx_power_watts = dbm_to_watts(scenario.params.tx_power_dbm);
    const BeamPattern listener_beam = rx_pattern(beams, listener.boresight_rad);

    double total = 0.0;
    for (int j : active_set) {
        if (j == k) {
            continue;
        }
        const NodePlacement& tx = scenario.bs[static_cast<std::size_t>(j)];
        const double tx_gain =
            cone_gain(tx_pattern(beams, tx.boresight_rad), angle_of(tx.position, listener.position));
        const double sense_gain =
            mode == SenseMode::directional
                ? cone_gain(listener_beam, angle_of(listener.position, tx.position))
                : 1.0;
        const double loss =
            pathloss(distance(tx.position, listener.position), scenario.params.carrier_freq_hz,
                     scenario.params.pathloss_exponent);
        total += tx_power_watts * tx_gain * loss * sense_gain;
    }
    return {total};
}

bool idle_decision(LinkPower sensed, double threshold_dbm) {
    return sensed.watts <= dbm_to_watts(threshold_dbm);
}

double threshold_for(const AccessScheme& scheme, SenseMode mode) {
    return mode == SenseMode::directional ? scheme.ed_threshold_dir_dbm
                                          : scheme.ed_threshold_omni_dbm;
}

std::vector<int> SnapshotResult::transmit_set() const {
    std::vector<int> set;
    for (std::size_t k = 0; k < transmitting.size(); ++k) {
        if (transmitting[k]) {
            set.push_back(static_cast<int>(k));
        }
    }
    return set;
}

SnapshotResult run_snapshot_with_order(const Scenario& scenario, const BeamConfig& beams,
                                       const AccessScheme& scheme, std::span<const int> order) {
    const std::size_t num_pairs = scenario.bs.size();
    if (order.size() != num_pairs) {
        throw std::invalid_argument("run_snapshot_with_order: order must cover every pair");
    }

    SnapshotResult result;
    result.transmitting.assign(num_pairs, false);
    result.sensed_at_bs_watts.assign(num_pairs, 0.0);
    if (scheme.mt_sense) {
        result.sensed_at_mt_watts.assign(num_pairs, std::nullopt);
    }
    result.rates.assign(num_pairs, RateResult{});
    result.access_order.assign(order.begin(), order.end());

    std::vector<int> active;  // admission order
    active.reserve(num_pairs);
    for (int k : order) {
        const LinkPower at_bs = sense_at_bs(scenario, beams, active, k, scheme.bs_sense);
        result.sensed_at_bs_watts[static_cast<std::size_t>(k)] = at_bs.watts;
        bool idle = idle_decision(at_bs, threshold_for(scheme, scheme.bs_sense));
        if (idle && scheme.mt_sense) {
            const LinkPower at_mt = sense_at_mt(scenario, beams, active, k, *scheme.mt_sense);
            result.sensed_at_mt_watts[static_cast<std::size_t>(k)] = at_mt.watts;
            idle = idle_decision(at_mt, threshold_for(scheme, *scheme.mt_sense));
        }
        if (idle) {
            active.push_back(k);
            result.transmitting[static_cast<std::size_t>(k)] = true;
        }
    }

    // Rates over the final active set; interference summed in ascending pair
    // index so the result does not depend on the admission order.
    const std::vector<int> final_set = result.transmit_set();
    const double tx_power_watts = dbm_to_watts(scenario.params.tx_power_dbm);
    const double noise_psd_w_hz = dbm_to_watts(scenario.params.noise_psd_dbm_hz);
    for (int k : final_set) {
        const NodePlacement& bs = scenario.bs[static_cast<std::size_t>(k)];
        const NodePlacement& mt = scenario.mt[static_cast<std::size_t>(k)];
        const double gain =
            total_gain_cone(tx_pattern(beams, bs.boresight_rad), rx_pattern(beams, mt.boresight_rad),
                            angle_of(bs.position, mt.position), angle_of(mt.position, bs.position),
                            1.0);
        const LinkPower signal = received_power(
            tx_power_watts, gain,
            pathloss(distance(bs.position, mt.position), scenario.params.carrier_freq_hz,
                     scenario.params.pathloss_exponent));
        const LinkPower interference =
            interference_at(scenario, beams, final_set, k, RxMode::directional);
        result.rates[static_cast<std::size_t>(k)] =
            rate(signal, interference, scenario.params.bandwidth_hz, noise_psd_w_hz);
    }
    return result;
}

SnapshotResult run_snapshot(const Scenario& scenario, const BeamConfig& beams,
                            const AccessScheme& scheme, SplitMix64& rng) {
    std::vector<int> order(scenario.bs.size());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    return run_snapshot_with_order(scenario, beams, scheme, order);
}

}  // namespace mmcoexist
