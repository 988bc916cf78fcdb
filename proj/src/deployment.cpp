// SPDX-License-Identifier: Apache-2.0

#include "mmcoexist/deployment.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mmcoexist/rng.hpp"
#include "mmcoexist/units.hpp"

namespace mmcoexist {

void validate(const ScenarioParams& params) {
    if (!(params.area_width_m > 0.0)) {
        throw std::invalid_argument("ScenarioParams: area_width_m must be > 0");
    }
    if (!(params.area_height_m > 0.0)) {
        throw std::invalid_argument("ScenarioParams: area_height_m must be > 0");
    }
    if (!(params.pair_distance_m > 0.0)) {
        throw std::invalid_argument("ScenarioParams: pair_distance_m must be > 0");
    }
    if (!(params.carrier_freq_hz > 0.0)) {
        throw std::invalid_argument("ScenarioParams: carrier_freq_hz must be > 0");
    }
    if (!(params.bandwidth_hz > 0.0)) {
        throw std::invalid_argument("ScenarioParams: bandwidth_hz must be > 0");
    }
    if (!(params.pathloss_exponent >= 1.0)) {
        throw std::invalid_argument("ScenarioParams: pathloss_exponent must be >= 1");
    }
    if (params.num_pairs < 1) {
        throw std::invalid_argument("ScenarioParams: num_pairs must be >= 1");
    }
}

Scenario generate_deployment(const ScenarioParams& params, std::uint64_t seed) {
    validate(params);

    Scenario scenario;
    scenario.params = params;
    scenario.seed = seed;
    scenario.bs.reserve(static_cast<std::size_t>(params.num_pairs));
    scenario.mt.reserve(static_cast<std::size_t>(params.num_pairs));

    SplitMix64 rng(seed);
    for (int k = 0; k < params.num_pairs; ++k) {
        // Fixed draw order per pair: x, y, angle. Part of the determinism contract.
        const double x = rng.uniform(0.0, params.area_width_m);
        const double y = rng.uniform(0.0, params.area_height_m);
        const double angle = rng.uniform(0.0, kTwoPi);

        NodePlacement bs;
        bs.position = {x, y};
        bs.boresight_rad = wrap_to_2pi(angle);

        NodePlacement mt;
        mt.position = {x + params.pair_distance_m * std::cos(angle),
                       y + params.pair_distance_m * std::sin(angle)};
        mt.boresight_rad = wrap_to_2pi(angle + kPi);

        scenario.bs.push_back(bs);
        scenario.mt.push_back(mt);
    }
    return scenario;
}

double pair_distance(const Scenario& scenario, int k, int j) {
    const int n = static_cast<int>(scenario.bs.size());
    if (k < 0 || k >= n) {
        throw std::out_of_range("pair_distance: MT index k out of range");
    }
    if (j < 0 || j >= n) {
        throw std::out_of_range("pair_distance: BS index j out of range");
    }
    return distance(scenario.mt[static_cast<std::size_t>(k)].position,
                    scenario.bs[static_cast<std::size_t>(j)].position);
}

std::string to_text(const Scenario& scenario) {
    std::string out;
    char line[160];
    for (std::size_t k = 0; k < scenario.bs.size(); ++k) {
        const NodePlacement& b = scenario.bs[k];
        std::snprintf(line, sizeof(line), "bs %zu %.17g %.17g %.17g\n", k, b.position.x,
                      b.position.y, b.boresight_rad);
        out += line;
        const NodePlacement& m = scenario.mt[k];
        std::snprintf(line, sizeof(line), "mt %zu %.17g %.17g %.17g\n", k, m.position.x,
                      m.position.y, m.boresight_rad);
        out += line;
    }
    return out;
}

}  // namespace mmcoexist
