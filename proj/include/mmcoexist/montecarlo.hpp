// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "mmcoexist/access.hpp"
#include "mmcoexist/antenna.hpp"
#include "mmcoexist/deployment.hpp"

namespace mmcoexist {

enum class SweepVariable { num_pairs, theta_tx_deg, theta_rx_deg };

std::string sweep_variable_name(SweepVariable variable);

struct SweepConfig {
    ScenarioParams base;
    BeamConfig beams;
    std::vector<SchemeId> schemes;
    int trials = 1000;
    SweepVariable sweep_variable = SweepVariable::num_pairs;
    std::vector<double> sweep_values;
    double threshold_omni_dbm = -74.0;
    double threshold_dir_dbm = -64.0;
    std::uint64_t master_seed = 1;
    int max_workers = 0;  // 0 = one worker per hardware thread
};

/// Throws std::invalid_argument naming the offending field.
void validate(const SweepConfig& config);

struct MetricsRecord {
    SchemeId scheme = SchemeId::omni_lbt;
    SweepVariable sweep_variable = SweepVariable::num_pairs;
    double sweep_value = 0.0;
    int trials = 0;
    double mean_sum_rate_bps = 0.0;
    double mean_rate_active_bps = 0.0;
    double mean_active_count = 0.0;
    double std_err_sum_rate_bps = 0.0;
};

/// Sum of all per-pair rates (silenced pairs contribute zero).
double sum_rate(std::span<const RateResult> rates);

/// Mean over the strictly positive rates; zero when no pair transmitted.
double mean_rate_active(std::span<const RateResult> rates);

struct TrialMetrics {
    double sum_rate_bps = 0.0;
    double rate_active_bps = 0.0;
    int active_count = 0;
};

TrialMetrics snapshot_metrics(const SnapshotResult& snapshot);

/// Runs one trial of the sweep: trial substream seeded with master ^ trial,
/// one draw for the deployment seed, remaining draws for the start order.
/// This is the exact per-trial path run_sweep executes.
SnapshotResult run_trial(const ScenarioParams& params, const BeamConfig& beams,
                         const AccessScheme& scheme, std::uint64_t master_seed,
                         std::uint64_t trial_index);

/// Per (scheme, sweep value): `trials` independent deployments, aggregated in
/// fixed trial order. The same master seed reproduces identical records for
/// any worker count.
std::vector<MetricsRecord> run_sweep(const SweepConfig& config);

/// CSV schema:
/// scheme,sweep_var,sweep_value,trials,mean_sum_rate_gbps,mean_rate_active_gbps,mean_active_count,stderr_sum_rate_gbps
void write_csv(std::ostream& out, std::span<const MetricsRecord> records);

}  // namespace mmcoexist
