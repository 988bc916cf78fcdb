// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmcoexist/geometry.hpp"

namespace mmcoexist {

/// Global parameters of one indoor scenario. Defaults are the dense-indoor
/// 60 GHz setup used throughout the experiments.
struct ScenarioParams {
    double area_width_m = 10.0;
    double area_height_m = 10.0;
    double pair_distance_m = 4.0;    // BS-MT distance, identical for all pairs
    double carrier_freq_hz = 60e9;
    double bandwidth_hz = 1e9;
    double tx_power_dbm = 10.0;      // per transmitting BS
    double noise_psd_dbm_hz = -174.0;
    double pathloss_exponent = 2.0;
    int num_pairs = 40;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const ScenarioParams& params);

struct NodePlacement {
    Vec2 position;
    double boresight_rad = 0.0;  // in [0, 2*pi)
};

/// K BS-MT pairs. BS boresights point at their own MT and vice versa.
/// Regenerating with the same (params, seed) reproduces the exact coordinates.
struct Scenario {
    ScenarioParams params;
    std::vector<NodePlacement> bs;
    std::vector<NodePlacement> mt;
    std::uint64_t seed = 0;
};

/// Draws BS positions uniformly over the area; each MT sits at
/// params.pair_distance_m from its BS at a uniform random angle. MTs are
/// allowed to fall outside the area rectangle.
Scenario generate_deployment(const ScenarioParams& params, std::uint64_t seed);

/// Distance between MT_k and BS_j (the interference path of pair j onto
/// receiver k). Throws std::out_of_range on bad indices.
double pair_distance(const Scenario& scenario, int k, int j);

/// One node per line: role, pair index, x, y, boresight. Round-trip exact.
std::string to_text(const Scenario& scenario);

}  // namespace mmcoexist
