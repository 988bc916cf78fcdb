// SPDX-License-Identifier: Apache-2.0

#include "mmcoexist/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "mmcoexist/slots.hpp"
#include "mmcoexist/units.hpp"

namespace mmcoexist {

namespace {

const std::vector<std::string> kKnownKeys = {
    "experiment",          "config",
    "out",                 "seed",
    "trials",              "k",
    "theta-tx-deg",        "theta-rx-deg",
    "scheme",              "threshold-omni-dbm",
    "threshold-dir-dbm",   "mu",
    "mcot-ms",             "sweep-var",
    "sweep-values",        "area-width-m",
    "area-height-m",       "pair-distance-m",
    "carrier-freq-hz",     "bandwidth-hz",
    "tx-power-dbm",        "noise-psd-dbm-hz",
    "pathloss-exponent",   "gain-tx-mainlobe-db",
    "gain-rx-mainlobe-db", "gain-tx-sidelobe-linear",
    "gain-rx-sidelobe-linear",
};

const std::vector<double> kDefaultKGrid = {5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
const std::vector<double> kDefaultThetaGrid = {15, 30, 45, 60, 90, 120, 180, 240, 300, 360};

struct KeyValue {
    std::string key;
    std::string value;
};

std::size_t levenshtein(std::string_view a, std::string_view b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) {
        row[j] = j;
    }
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
            const std::size_t next = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
            diag = row[j];
            row[j] = next;
        }
    }
    return row[b.size()];
}

// Distance to a full key or to its same-length prefix, so that "treshold"
// still points at the threshold-* keys.
std::size_t suggestion_distance(std::string_view unknown, std::string_view key) {
    std::size_t best = levenshtein(unknown, key);
    if (key.size() > unknown.size()) {
        best = std::min(best, levenshtein(unknown, key.substr(0, unknown.size() + 1)));
    }
    return best;
}

std::string suggest_keys(std::string_view unknown) {
    std::size_t best = 4;  // only suggest reasonably close keys
    std::vector<std::string> matches;
    for (const std::string& key : kKnownKeys) {
        const std::size_t d = suggestion_distance(unknown, key);
        if (d < best) {
            best = d;
            matches = {key};
        } else if (d == best && !matches.empty()) {
            matches.push_back(key);
        }
    }
    if (matches.empty()) {
        return "";
    }
    std::string out = " (did you mean '" + matches[0] + "'";
    if (matches.size() > 1) {
        out += " or '" + matches[1] + "'";
    }
    out += "?)";
    return out;
}

void check_known_key(const std::string& key) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
        throw CliError("unknown key '" + key + "'" + suggest_keys(key));
    }
}

double parse_double(const KeyValue& kv) {
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(kv.value, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != kv.value.size() || kv.value.empty()) {
        throw CliError("value for '" + kv.key + "' must be a number (got '" + kv.value + "')");
    }
    return value;
}

long long parse_int(const KeyValue& kv) {
    std::size_t pos = 0;
    long long value = 0;
    try {
        value = std::stoll(kv.value, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != kv.value.size() || kv.value.empty()) {
        throw CliError("value for '" + kv.key + "' must be an integer (got '" + kv.value + "')");
    }
    return value;
}

std::uint64_t parse_seed(const KeyValue& kv) {
    std::size_t pos = 0;
    unsigned long long value = 0;
    try {
        value = std::stoull(kv.value, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != kv.value.size() || kv.value.empty()) {
        throw CliError("value for '" + kv.key + "' must be a non-negative integer (got '" +
                       kv.value + "')");
    }
    return value;
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::string part;
    std::stringstream stream(text);
    while (std::getline(stream, part, ',')) {
        parts.push_back(part);
    }
    return parts;
}

Experiment parse_experiment(const KeyValue& kv) {
    static const std::vector<std::pair<std::string, Experiment>> kNames = {
        {"fig4_sumrate_vs_k", Experiment::fig4_sumrate_vs_k},
        {"fig5_meanrate_vs_k", Experiment::fig5_meanrate_vs_k},
        {"fig6_sumrate_vs_txbw", Experiment::fig6_sumrate_vs_txbw},
        {"fig7_sumrate_vs_rxbw", Experiment::fig7_sumrate_vs_rxbw},
        {"slots_overhead", Experiment::slots_overhead},
        {"callflow_demo", Experiment::callflow_demo},
        {"custom", Experiment::custom},
    };
    for (const auto& [name, experiment] : kNames) {
        if (kv.value == name) {
            return experiment;
        }
    }
    std::string valid;
    for (const auto& [name, experiment] : kNames) {
        valid += valid.empty() ? name : ", " + name;
    }
    throw CliError("value for 'experiment' must be one of: " + valid + " (got '" + kv.value + "')");
}

SweepVariable parse_sweep_variable(const KeyValue& kv) {
    if (kv.value == "k") {
        return SweepVariable::num_pairs;
    }
    if (kv.value == "theta-tx-deg" || kv.value == "theta_tx_deg") {
        return SweepVariable::theta_tx_deg;
    }
    if (kv.value == "theta-rx-deg" || kv.value == "theta_rx_deg") {
        return SweepVariable::theta_rx_deg;
    }
    throw CliError("value for 'sweep-var' must be one of: k, theta-tx-deg, theta-rx-deg (got '" +
                   kv.value + "')");
}

std::vector<KeyValue> scan_flags(const std::vector<std::string>& args) {
    std::vector<KeyValue> pairs;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& arg = args[i];
        if (arg.rfind("--", 0) != 0) {
            throw CliError("unexpected argument '" + arg + "' (flags start with --)");
        }
        std::string key = arg.substr(2);
        std::string value;
        const std::size_t eq = key.find('=');
        if (eq != std::string::npos) {
            value = key.substr(eq + 1);
            key = key.substr(0, eq);
            check_known_key(key);
        } else {
            check_known_key(key);
            if (i + 1 >= args.size()) {
                throw CliError("flag '--" + key + "' expects a value");
            }
            value = args[++i];
        }
        pairs.push_back({key, value});
    }
    return pairs;
}

std::vector<KeyValue> read_config_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw CliError("cannot open config file '" + path + "'");
    }
    std::vector<KeyValue> pairs;
    std::string line;
    int line_no = 0;
    auto trim = [](std::string s) {
        const auto begin = s.find_first_not_of(" \t\r");
        const auto end = s.find_last_not_of(" \t\r");
        return begin == std::string::npos ? std::string() : s.substr(begin, end - begin + 1);
    };
    while (std::getline(file, line)) {
        ++line_no;
        const std::string trimmed = trim(line);
        if (trimmed.empty() || trimmed[0] == '#') {
            continue;
        }
        const std::size_t eq = trimmed.find('=');
        if (eq == std::string::npos) {
            throw CliError("config file '" + path + "' line " + std::to_string(line_no) +
                           ": expected key=value");
        }
        KeyValue kv{trim(trimmed.substr(0, eq)), trim(trimmed.substr(eq + 1))};
        check_known_key(kv.key);
        if (kv.key == "config") {
            throw CliError("config file '" + path + "': key 'config' is not allowed inside a file");
        }
        pairs.push_back(kv);
    }
    return pairs;
}

void experiment_defaults(RunConfig& config) {
    SweepConfig& sweep = config.sweep;
    sweep.schemes.assign(std::begin(kAllSchemes), std::end(kAllSchemes));
    sweep.trials = 1000;
    sweep.base = ScenarioParams{};  // the dense-indoor 60 GHz defaults
    sweep.beams = BeamConfig{};
    switch (config.experiment) {
        case Experiment::fig4_sumrate_vs_k:
        case Experiment::fig5_meanrate_vs_k:
        case Experiment::custom:
            sweep.sweep_variable = SweepVariable::num_pairs;
            sweep.sweep_values = kDefaultKGrid;
            break;
        case Experiment::fig6_sumrate_vs_txbw:
            sweep.sweep_variable = SweepVariable::theta_tx_deg;
            sweep.sweep_values = kDefaultThetaGrid;
            break;
        case Experiment::fig7_sumrate_vs_rxbw:
            sweep.sweep_variable = SweepVariable::theta_rx_deg;
            sweep.sweep_values = kDefaultThetaGrid;
            break;
        case Experiment::slots_overhead:
        case Experiment::callflow_demo:
            sweep.sweep_values = kDefaultKGrid;  // unused by these experiments
            break;
    }
    const bool text_output = config.experiment == Experiment::callflow_demo;
    config.output_path = experiment_name(config.experiment) + (text_output ? ".txt" : ".csv");
}

}  // namespace

std::string experiment_name(Experiment experiment) {
    switch (experiment) {
        case Experiment::fig4_sumrate_vs_k: return "fig4_sumrate_vs_k";
        case Experiment::fig5_meanrate_vs_k: return "fig5_meanrate_vs_k";
        case Experiment::fig6_sumrate_vs_txbw: return "fig6_sumrate_vs_txbw";
        case Experiment::fig7_sumrate_vs_rxbw: return "fig7_sumrate_vs_rxbw";
        case Experiment::slots_overhead: return "slots_overhead";
        case Experiment::callflow_demo: return "callflow_demo";
        case Experiment::custom: return "custom";
    }
    throw CliError("experiment_name: unknown experiment");
}

RunConfig parse_config(const std::vector<std::string>& args) {
    const std::vector<KeyValue> flag_pairs = scan_flags(args);

    std::vector<KeyValue> file_pairs;
    for (const KeyValue& kv : flag_pairs) {
        if (kv.key == "config") {
            file_pairs = read_config_file(kv.value);
        }
    }

    // File first, flags second: flags override the file.
    std::vector<KeyValue> merged = file_pairs;
    for (const KeyValue& kv : flag_pairs) {
        if (kv.key != "config") {
            merged.push_back(kv);
        }
    }

    RunConfig config;
    for (const KeyValue& kv : merged) {
        if (kv.key == "experiment") {
            config.experiment = parse_experiment(kv);
        }
    }
    experiment_defaults(config);

    // Scheme lists do not accumulate across sources; flags replace the file.
    std::vector<std::string> scheme_names;
    bool scheme_from_flags = false;
    for (const KeyValue& kv : flag_pairs) {
        if (kv.key == "scheme") {
            scheme_from_flags = true;
        }
    }
    std::optional<long long> pin_k;
    std::optional<double> pin_theta_tx, pin_theta_rx;
    bool explicit_sweep_values = false;
    bool explicit_out = false;

    for (std::size_t index = 0; index < merged.size(); ++index) {
        const KeyValue& kv = merged[index];
        const bool from_flags = index >= file_pairs.size();
        if (kv.key == "experiment") {
            continue;  // already resolved
        } else if (kv.key == "out") {
            config.output_path = kv.value;
            explicit_out = true;
        } else if (kv.key == "seed") {
            config.sweep.master_seed = parse_seed(kv);
        } else if (kv.key == "trials") {
            const long long trials = parse_int(kv);
            if (trials < 1) {
                throw CliError("value for 'trials' must be >= 1 (got '" + kv.value + "')");
            }
            config.sweep.trials = static_cast<int>(trials);
        } else if (kv.key == "k") {
            const long long k = parse_int(kv);
            if (k < 1) {
                throw CliError("value for 'k' must be >= 1 (got '" + kv.value + "')");
            }
            pin_k = k;
        } else if (kv.key == "theta-tx-deg") {
            pin_theta_tx = parse_double(kv);
        } else if (kv.key == "theta-rx-deg") {
            pin_theta_rx = parse_double(kv);
        } else if (kv.key == "scheme") {
            if (scheme_from_flags && !from_flags) {
                continue;
            }
            for (const std::string& name : split_commas(kv.value)) {
                scheme_names.push_back(name);
            }
        } else if (kv.key == "threshold-omni-dbm") {
            config.sweep.threshold_omni_dbm = parse_double(kv);
        } else if (kv.key == "threshold-dir-dbm") {
            config.sweep.threshold_dir_dbm = parse_double(kv);
        } else if (kv.key == "mu") {
            const long long mu = parse_int(kv);
            if (mu < 0 || mu > 4) {
                throw CliError("value for 'mu' must be in 0..4 (got '" + kv.value + "')");
            }
            config.mu = static_cast<int>(mu);
        } else if (kv.key == "mcot-ms") {
            config.mcot_ms = parse_double(kv);
            if (!(config.mcot_ms > 0.0)) {
                throw CliError("value for 'mcot-ms' must be > 0 (got '" + kv.value + "')");
            }
        } else if (kv.key == "sweep-var") {
            config.sweep.sweep_variable = parse_sweep_variable(kv);
            if (!explicit_sweep_values) {
                config.sweep.sweep_values = config.sweep.sweep_variable == SweepVariable::num_pairs
                                                ? kDefaultKGrid
                                                : kDefaultThetaGrid;
            }
        } else if (kv.key == "sweep-values") {
            config.sweep.sweep_values.clear();
            for (const std::string& item : split_commas(kv.value)) {
                config.sweep.sweep_values.push_back(parse_double({kv.key, item}));
            }
            explicit_sweep_values = true;
        } else if (kv.key == "area-width-m") {
            config.sweep.base.area_width_m = parse_double(kv);
        } else if (kv.key == "area-height-m") {
            config.sweep.base.area_height_m = parse_double(kv);
        } else if (kv.key == "pair-distance-m") {
            config.sweep.base.pair_distance_m = parse_double(kv);
        } else if (kv.key == "carrier-freq-hz") {
            config.sweep.base.carrier_freq_hz = parse_double(kv);
        } else if (kv.key == "bandwidth-hz") {
            config.sweep.base.bandwidth_hz = parse_double(kv);
        } else if (kv.key == "tx-power-dbm") {
            config.sweep.base.tx_power_dbm = parse_double(kv);
        } else if (kv.key == "noise-psd-dbm-hz") {
            config.sweep.base.noise_psd_dbm_hz = parse_double(kv);
        } else if (kv.key == "pathloss-exponent") {
            config.sweep.base.pathloss_exponent = parse_double(kv);
        } else if (kv.key == "gain-tx-mainlobe-db") {
            config.sweep.beams.gain_tx_mainlobe = db_to_linear(parse_double(kv));
        } else if (kv.key == "gain-rx-mainlobe-db") {
            config.sweep.beams.gain_rx_mainlobe = db_to_linear(parse_double(kv));
        } else if (kv.key == "gain-tx-sidelobe-linear") {
            config.sweep.beams.gain_tx_sidelobe = parse_double(kv);
        } else if (kv.key == "gain-rx-sidelobe-linear") {
            config.sweep.beams.gain_rx_sidelobe = parse_double(kv);
        }
    }
    (void)explicit_out;

    if (!scheme_names.empty()) {
        config.sweep.schemes.clear();
        for (const std::string& name : scheme_names) {
            const std::optional<SchemeId> id = scheme_from_name(name);
            if (!id) {
                std::string valid;
                for (SchemeId s : kAllSchemes) {
                    valid += valid.empty() ? scheme_name(s) : ", " + scheme_name(s);
                }
                throw CliError("value for 'scheme' must be one of: " + valid + " (got '" + name +
                               "')");
            }
            config.sweep.schemes.push_back(*id);
        }
    }

    // A pinned variable overrides the base scenario; pinning the sweep
    // variable itself collapses the sweep to that single point.
    if (pin_k) {
        config.sweep.base.num_pairs = static_cast<int>(*pin_k);
        if (config.sweep.sweep_variable == SweepVariable::num_pairs && !explicit_sweep_values) {
            config.sweep.sweep_values = {static_cast<double>(*pin_k)};
        }
    }
    if (pin_theta_tx) {
        config.sweep.beams.theta_tx_rad = deg_to_rad(*pin_theta_tx);
        if (config.sweep.sweep_variable == SweepVariable::theta_tx_deg && !explicit_sweep_values) {
            config.sweep.sweep_values = {*pin_theta_tx};
        }
    }
    if (pin_theta_rx) {
        config.sweep.beams.theta_rx_rad = deg_to_rad(*pin_theta_rx);
        if (config.sweep.sweep_variable == SweepVariable::theta_rx_deg && !explicit_sweep_values) {
            config.sweep.sweep_values = {*pin_theta_rx};
        }
    }

    const bool is_sweep_experiment = config.experiment != Experiment::slots_overhead &&
                                     config.experiment != Experiment::callflow_demo;
    if (is_sweep_experiment) {
        try {
            validate(config.sweep);
        } catch (const std::invalid_argument& error) {
            throw CliError(error.what());
        }
    }
    return config;
}

namespace {

int workers_from_env() {
    const char* raw = std::getenv("MMCOEXIST_THREADS");
    if (raw == nullptr || *raw == '\0') {
        return 0;
    }
    const KeyValue kv{"MMCOEXIST_THREADS", raw};
    const long long value = parse_int(kv);
    if (value < 1) {
        throw CliError("MMCOEXIST_THREADS must be >= 1 (got '" + std::string(raw) + "')");
    }
    return static_cast<int>(value);
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw CliError("cannot write output file '" + path + "'");
    }
    file << contents;
    file.flush();
    if (!file) {
        throw CliError("failed while writing output file '" + path + "'");
    }
}

int run_sweep_experiment(const RunConfig& config) {
    SweepConfig sweep = config.sweep;
    sweep.max_workers = workers_from_env();
    const std::vector<MetricsRecord> records = run_sweep(sweep);

    std::ostringstream csv;
    write_csv(csv, records);
    write_file(config.output_path, csv.str());

    const bool by_mean_rate = config.experiment == Experiment::fig5_meanrate_vs_k;
    std::cout << "wrote " << config.output_path << " (" << records.size() << " records)\n";
    for (SchemeId scheme : sweep.schemes) {
        const MetricsRecord* best = nullptr;
        const MetricsRecord* worst = nullptr;
        for (const MetricsRecord& r : records) {
            if (r.scheme != scheme) {
                continue;
            }
            auto metric = [&](const MetricsRecord& m) {
                return by_mean_rate ? m.mean_rate_active_bps : m.mean_sum_rate_bps;
            };
            if (best == nullptr || metric(r) > metric(*best)) {
                best = &r;
            }
            if (worst == nullptr || metric(r) < metric(*worst)) {
                worst = &r;
            }
        }
        if (best == nullptr) {
            continue;
        }
        const char* label = by_mean_rate ? "mean-rate" : "sum-rate";
        char line[256];
        std::snprintf(line, sizeof(line),
                      "%s: best %s %.4g Gbit/s at %s=%g, worst %.4g Gbit/s at %s=%g\n",
                      scheme_name(scheme).c_str(), label,
                      (by_mean_rate ? best->mean_rate_active_bps : best->mean_sum_rate_bps) / 1e9,
                      sweep_variable_name(sweep.sweep_variable).c_str(), best->sweep_value,
                      (by_mean_rate ? worst->mean_rate_active_bps : worst->mean_sum_rate_bps) / 1e9,
                      sweep_variable_name(sweep.sweep_variable).c_str(), worst->sweep_value);
        std::cout << line;
    }
    return 0;
}

int run_slots_overhead(const RunConfig& config) {
    std::vector<int> mus = config.mu >= 0 ? std::vector<int>{config.mu} : std::vector<int>{3, 4};
    std::ostringstream csv;
    csv << "mu,scs_khz,slot_length_us,mcot_ms,unoccupied_percent\n";
    char line[128];
    for (int mu : mus) {
        const NumerologyConfig numer = numerology(mu);
        std::snprintf(line, sizeof(line), "%d,%g,%g,%g,%.4g\n", mu, numer.scs_khz,
                      numer.slot_length_us, config.mcot_ms,
                      unoccupied_fraction_percent(mu, config.mcot_ms));
        csv << line;
    }
    write_file(config.output_path, csv.str());
    std::cout << "wrote " << config.output_path << "\n" << csv.str();
    return 0;
}

int run_callflow_demo(const RunConfig& config) {
    // Two downlink arrivals without slot headers: the first is served
    // immediately, the second finds the receiver busy for three slots.
    const SlotLayout layout = build_slot_layout(SlotDirection::downlink, false);
    const std::vector<long> arrivals = {0, 5};
    const auto busy_at_mt = [](long slot) { return slot >= 5 && slot <= 7; };
    const auto busy_at_bs = [](long) { return false; };
    const CallFlowTrace trace = simulate_call_flow(arrivals, busy_at_mt, busy_at_bs, layout);

    const std::string text = to_text(trace);
    write_file(config.output_path, text);
    std::cout << "wrote " << config.output_path << "\n" << text;
    return 0;
}

}  // namespace

int run(const RunConfig& config) {
    switch (config.experiment) {
        case Experiment::slots_overhead:
            return run_slots_overhead(config);
        case Experiment::callflow_demo:
            return run_callflow_demo(config);
        default:
            return run_sweep_experiment(config);
    }
}

std::string usage_text() {
    return "usage: mmcoexist [--experiment NAME] [--config FILE] [--out PATH] [flags]\n"
           "\n"
           "experiments: fig4_sumrate_vs_k (default), fig5_meanrate_vs_k,\n"
           "             fig6_sumrate_vs_txbw, fig7_sumrate_vs_rxbw,\n"
           "             slots_overhead, callflow_demo, custom\n"
           "\n"
           "flags (also valid as key=value lines in the --config file):\n"
           "  --out PATH                 output file (default <experiment>.csv/.txt)\n"
           "  --seed N                   master seed (default 1)\n"
           "  --trials N                 deployments per sweep point (default 1000)\n"
           "  --k N                      pin the number of BS-MT pairs\n"
           "  --theta-tx-deg D           pin the Tx mainlobe beamwidth\n"
           "  --theta-rx-deg D           pin the Rx mainlobe beamwidth\n"
           "  --scheme NAME              restrict schemes (repeatable / comma list)\n"
           "  --threshold-omni-dbm D     omni sensing threshold (default -74)\n"
           "  --threshold-dir-dbm D      directional sensing threshold (default -64)\n"
           "  --mu N                     numerology for slots_overhead (default: 3 and 4)\n"
           "  --mcot-ms D                channel occupancy window (default 9)\n"
           "  --sweep-var NAME           custom sweep variable: k, theta-tx-deg, theta-rx-deg\n"
           "  --sweep-values A,B,...     custom sweep grid\n"
           "  scenario overrides: area-width-m, area-height-m, pair-distance-m,\n"
           "    carrier-freq-hz, bandwidth-hz, tx-power-dbm, noise-psd-dbm-hz,\n"
           "    pathloss-exponent, gain-tx-mainlobe-db, gain-rx-mainlobe-db,\n"
           "    gain-tx-sidelobe-linear, gain-rx-sidelobe-linear\n"
           "\n"
           "MMCOEXIST_THREADS caps the number of worker threads.\n";
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    if (std::find(args.begin(), args.end(), "--help") != args.end() ||
        std::find(args.begin(), args.end(), "-h") != args.end()) {
        std::cout << usage_text();
        return 0;
    }
    RunConfig config;
    try {
        config = parse_config(args);
    } catch (const CliError& error) {
        std::cerr << "error: " << error.what() << "\n";
        std::cerr << "run with --help for usage\n";
        return 2;
    }
    try {
        return run(config);
    } catch (const CliError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
}

}  // namespace mmcoexist
