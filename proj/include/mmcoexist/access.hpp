// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mmcoexist/antenna.hpp"
#include "mmcoexist/deployment.hpp"
#include "mmcoexist/linkbudget.hpp"
#include "mmcoexist/rng.hpp"

namespace mmcoexist {

enum class SenseMode {
    omni,         // unity sensing gain in every direction
    directional,  // sensing through the node's own cone pattern
};

/// The six channel-access procedures. Pure LBT senses only at the BS; the
/// LBT-LBR combinations add a second carrier sense at the MT, granted back to
/// the BS via the ready-to-receive handshake.
enum class SchemeId {
    omni_lbt,
    dir_lbt,
    omni_lbt_omni_lbr,
    omni_lbt_dir_lbr,
    dir_lbt_omni_lbr,
    dir_lbt_dir_lbr,
};

inline constexpr SchemeId kAllSchemes[] = {
    SchemeId::omni_lbt,          SchemeId::dir_lbt,          SchemeId::omni_lbt_omni_lbr,
    SchemeId::omni_lbt_dir_lbr,  SchemeId::dir_lbt_omni_lbr, SchemeId::dir_lbt_dir_lbr,
};

/// Sensing modes plus energy-detection thresholds. The directional threshold
/// follows the normalized convention: omni threshold plus the mainlobe gain
/// used for sensing (-74 dBm omni / -64 dBm directional by default).
struct AccessScheme {
    SenseMode bs_sense = SenseMode::omni;
    std::optional<SenseMode> mt_sense;  // nullopt = pure LBT, no receiver sense
    double ed_threshold_omni_dbm = -74.0;
    double ed_threshold_dir_dbm = -64.0;
};

AccessScheme make_scheme(SchemeId id, double threshold_omni_dbm = -74.0,
                         double threshold_dir_dbm = -64.0);

std::string scheme_name(SchemeId id);
std::optional<SchemeId> scheme_from_name(std::string_view name);

/// Energy sensed at BS_j while the pairs in active_set transmit. Every term is
/// tx power times the transmitter's cone gain towards BS_j times the BS-to-BS
/// pathloss; directional mode additionally weighs each term by BS_j's own Tx
/// cone towards the interferer, omni mode listens with unity gain.
LinkPower sense_at_bs(const Scenario& scenario, const BeamConfig& beams,
                      std::span<const int> active_set, int j, SenseMode mode);

/// Energy sensed at MT_k on reception of the ready-to-transmit message. Its
/// own BS is silent at this point, so only pairs in active_set contribute.
/// Directional mode senses through the MT's data Rx beam.
LinkPower sense_at_mt(const Scenario& scenario, const BeamConfig& beams,
                      std::span<const int> active_set, int k, SenseMode mode);

/// Idle iff sensed power <= threshold (inclusive).
bool idle_decision(LinkPower sensed, double threshold_dbm);

double threshold_for(const AccessScheme& scheme, SenseMode mode);

/// Outcome of one deployment snapshot: which pairs got to transmit, what each
/// sense stage measured, and the resulting per-pair rates.
struct SnapshotResult {
    std::vector<bool> transmitting;
    std::vector<double> sensed_at_bs_watts;
    // One entry per pair when the scheme has LBR (empty otherwise); nullopt
    // where the pair never reached the MT sense stage.
    std::vector<std::optional<double>> sensed_at_mt_watts;
    std::vector<RateResult> rates;
    std::vector<int> access_order;

    std::vector<int> transmit_set() const;  // ascending pair indices
};

/// Visits pairs in `order` (the random start order). Each pair must pass its
/// LBT sense, then its LBR sense when the scheme has one; a busy sense
/// silences the pair for the whole snapshot. Rates are computed over the
/// final active set, MTs receiving through their directional data beam.
SnapshotResult run_snapshot_with_order(const Scenario& scenario, const BeamConfig& beams,
                                       const AccessScheme& scheme, std::span<const int> order);

/// Same, with the start order drawn uniformly from `rng`.
SnapshotResult run_snapshot(const Scenario& scenario, const BeamConfig& beams,
                            const AccessScheme& scheme, SplitMix64& rng);

}  // namespace mmcoexist
