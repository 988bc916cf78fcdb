// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mmcoexist/montecarlo.hpp"

namespace mmcoexist {

enum class Experiment {
    fig4_sumrate_vs_k,
    fig5_meanrate_vs_k,
    fig6_sumrate_vs_txbw,
    fig7_sumrate_vs_rxbw,
    slots_overhead,
    callflow_demo,
    custom,
};

std::string experiment_name(Experiment experiment);

/// Raised for bad flags, bad config keys, and unwritable outputs. The message
/// names the offending key and the expected form.
class CliError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    Experiment experiment = Experiment::fig4_sumrate_vs_k;
    SweepConfig sweep;
    std::string output_path;
    int mu = -1;  // slots_overhead: -1 reports both mu=3 and mu=4
    double mcot_ms = 9.0;
};

/// Resolves defaults for the selected experiment, then applies the config
/// file (--config), then the flags; flags override the file. Unknown keys are
/// rejected with a nearest-key suggestion. Throws CliError.
RunConfig parse_config(const std::vector<std::string>& args);

/// Executes the configured experiment, writes its output file, prints a
/// summary to stdout. Returns 0 when every requested output was written;
/// throws CliError on I/O failure. Worker count is capped by the
/// MMCOEXIST_THREADS environment variable.
int run(const RunConfig& config);

/// Full command-line entry: parse, run, map errors to exit codes
/// (2 = usage/config error, 1 = runtime error).
int cli_main(int argc, char** argv);

std::string usage_text();

}  // namespace mmcoexist
