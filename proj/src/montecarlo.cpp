// SPDX-License-Identifier: Apache-2.0

#include "mmcoexist/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "mmcoexist/units.hpp"

namespace mmcoexist {

std::string sweep_variable_name(SweepVariable variable) {
    switch (variable) {
        case SweepVariable::num_pairs: return "k";
        case SweepVariable::theta_tx_deg: return "theta_tx_deg";
        case SweepVariable::theta_rx_deg: return "theta_rx_deg";
    }
    throw std::invalid_argument("sweep_variable_name: unknown variable");
}

void validate(const SweepConfig& config) {
    validate(config.base);
    validate(config.beams);
    if (config.trials < 1) {
        throw std::invalid_argument("SweepConfig: trials must be >= 1");
    }
    if (config.sweep_values.empty()) {
        throw std::invalid_argument("SweepConfig: sweep_values must be non-empty");
    }
    if (config.schemes.empty()) {
        throw std::invalid_argument("SweepConfig: schemes must be non-empty");
    }
    for (double value : config.sweep_values) {
        if (config.sweep_variable == SweepVariable::num_pairs) {
            if (value < 1.0 || value != std::floor(value)) {
                throw std::invalid_argument("SweepConfig: sweep_values for k must be integers >= 1");
            }
        } else if (!(value > 0.0) || value > 360.0) {
            throw std::invalid_argument("SweepConfig: sweep_values for beamwidths must be in (0, 360] degrees");
        }
    }
    if (config.max_workers < 0) {
        throw std::invalid_argument("SweepConfig: max_workers must be >= 0");
    }
}

double sum_rate(std::span<const RateResult> rates) {
    double total = 0.0;
    for (const RateResult& r : rates) {
        total += r.bits_per_second;
    }
    return total;
}

double mean_rate_active(std::span<const RateResult> rates) {
    double total = 0.0;
    int active = 0;
    for (const RateResult& r : rates) {
        if (r.bits_per_second > 0.0) {
            total += r.bits_per_second;
            ++active;
        }
    }
    return active > 0 ? total / active : 0.0;
}

TrialMetrics snapshot_metrics(const SnapshotResult& snapshot) {
    TrialMetrics metrics;
    metrics.sum_rate_bps = sum_rate(snapshot.rates);
    metrics.rate_active_bps = mean_rate_active(snapshot.rates);
    for (bool tx : snapshot.transmitting) {
        metrics.active_count += tx ? 1 : 0;
    }
    return metrics;
}

SnapshotResult run_trial(const ScenarioParams& params, const BeamConfig& beams,
                         const AccessScheme& scheme, std::uint64_t master_seed,
                         std::uint64_t trial_index) {
    SplitMix64 rng(master_seed ^ trial_index);
    const std::uint64_t scenario_seed = rng.next();
    const Scenario scenario = generate_deployment(params, scenario_seed);
    return run_snapshot(scenario, beams, scheme, rng);
}

namespace {

// Scenario parameters and beams for one sweep point.
void apply_sweep_value(SweepVariable variable, double value, ScenarioParams& params,
                       BeamConfig& beams) {
    switch (variable) {
        case SweepVariable::num_pairs:
            params.num_pairs = static_cast<int>(value);
            break;
        case SweepVariable::theta_tx_deg:
            beams.theta_tx_rad = deg_to_rad(value);
            break;
        case SweepVariable::theta_rx_deg:
            beams.theta_rx_rad = deg_to_rad(value);
            break;
    }
}

std::vector<TrialMetrics> run_cell(const ScenarioParams& params, const BeamConfig& beams,
                                   const AccessScheme& scheme, int trials,
                                   std::uint64_t master_seed, int max_workers) {
    std::vector<TrialMetrics> per_trial(static_cast<std::size_t>(trials));

    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) {
        workers = 1;
    }
    if (max_workers > 0) {
        workers = std::min<unsigned>(workers, static_cast<unsigned>(max_workers));
    }
    workers = std::min<unsigned>(workers, static_cast<unsigned>(trials));

    // Each trial lands in its own slot, so scheduling cannot change results.
    std::atomic<int> next_trial{0};
    auto worker = [&]() {
        for (;;) {
            const int t = next_trial.fetch_add(1);
            if (t >= trials) {
                return;
            }
            const SnapshotResult snapshot = run_trial(params, beams, scheme, master_seed,
                                                      static_cast<std::uint64_t>(t));
            per_trial[static_cast<std::size_t>(t)] = snapshot_metrics(snapshot);
        }
    };

    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) {
            pool.emplace_back(worker);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }
    return per_trial;
}

MetricsRecord reduce_cell(std::span<const TrialMetrics> per_trial) {
    MetricsRecord record;
    record.trials = static_cast<int>(per_trial.size());

    double sum = 0.0, sum_active_rate = 0.0, sum_count = 0.0;
    for (const TrialMetrics& t : per_trial) {
        sum += t.sum_rate_bps;
        sum_active_rate += t.rate_active_bps;
        sum_count += t.active_count;
    }
    const double n = static_cast<double>(per_trial.size());
    record.mean_sum_rate_bps = sum / n;
    record.mean_rate_active_bps = sum_active_rate / n;
    record.mean_active_count = sum_count / n;

    if (per_trial.size() > 1) {
        double ss = 0.0;
        for (const TrialMetrics& t : per_trial) {
            const double d = t.sum_rate_bps - record.mean_sum_rate_bps;
            ss += d * d;
        }
        record.std_err_sum_rate_bps = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    return record;
}

}  // namespace

std::vector<MetricsRecord> run_sweep(const SweepConfig& config) {
    validate(config);

    std::vector<MetricsRecord> records;
    records.reserve(config.schemes.size() * config.sweep_values.size());
    for (SchemeId scheme_id : config.schemes) {
        const AccessScheme scheme =
            make_scheme(scheme_id, config.threshold_omni_dbm, config.threshold_dir_dbm);
        for (double value : config.sweep_values) {
            ScenarioParams params = config.base;
            BeamConfig beams = config.beams;
            apply_sweep_value(config.sweep_variable, value, params, beams);

            const std::vector<TrialMetrics> per_trial = run_cell(
                params, beams, scheme, config.trials, config.master_seed, config.max_workers);
            MetricsRecord record = reduce_cell(per_trial);
            record.scheme = scheme_id;
            record.sweep_variable = config.sweep_variable;
            record.sweep_value = value;
            records.push_back(record);
        }
    }
    return records;
}

void write_csv(std::ostream& out, std::span<const MetricsRecord> records) {
    out << "scheme,sweep_var,sweep_value,trials,mean_sum_rate_gbps,mean_rate_active_gbps,"
           "mean_active_count,stderr_sum_rate_gbps\n";
    char buf[256];
    for (const MetricsRecord& r : records) {
        std::snprintf(buf, sizeof(buf), "%s,%s,%g,%d,%.4g,%.4g,%.4g,%.4g\n",
                      scheme_name(r.scheme).c_str(), sweep_variable_name(r.sweep_variable).c_str(),
                      r.sweep_value, r.trials, r.mean_sum_rate_bps / 1e9,
                      r.mean_rate_active_bps / 1e9, r.mean_active_count,
                      r.std_err_sum_rate_bps / 1e9);
        out << buf;
    }
}

}  // namespace mmcoexist
