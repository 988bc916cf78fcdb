// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "mmcoexist/cli.hpp"
#include "mmcoexist/units.hpp"

using namespace mmcoexist;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream file(path, std::ios::binary);
    std::ostringstream out;
    out << file.rdbuf();
    return out.str();
}

struct TempFile {
    fs::path path;
    explicit TempFile(const std::string& name) : path(fs::temp_directory_path() / name) {}
    ~TempFile() {
        std::error_code ec;
        fs::remove(path, ec);
    }
};

}  // namespace

TEST_CASE("defaults are the dense-indoor experiment setup") {
    const RunConfig config = parse_config({"--experiment", "fig4_sumrate_vs_k"});
    CHECK(config.experiment == Experiment::fig4_sumrate_vs_k);
    CHECK(config.sweep.trials == 1000);
    CHECK(config.sweep.schemes.size() == 6);
    CHECK(config.sweep.sweep_variable == SweepVariable::num_pairs);
    REQUIRE(!config.sweep.sweep_values.empty());
    CHECK(config.sweep.sweep_values.front() == 5.0);
    CHECK(config.sweep.sweep_values.back() == 50.0);
    CHECK(config.sweep.beams.theta_tx_rad == doctest::Approx(deg_to_rad(60.0)));
    CHECK(config.sweep.beams.theta_rx_rad == doctest::Approx(deg_to_rad(90.0)));
    CHECK(config.sweep.beams.gain_tx_mainlobe == 10.0);
    CHECK(config.sweep.beams.gain_rx_sidelobe == 0.0);
    CHECK(config.sweep.threshold_omni_dbm == -74.0);
    CHECK(config.sweep.threshold_dir_dbm == -64.0);
    CHECK(config.sweep.base.area_width_m == 10.0);
    CHECK(config.sweep.base.pair_distance_m == 4.0);
    CHECK(config.sweep.base.carrier_freq_hz == 60e9);
    CHECK(config.sweep.base.bandwidth_hz == 1e9);
    CHECK(config.sweep.base.tx_power_dbm == 10.0);
    CHECK(config.sweep.base.noise_psd_dbm_hz == -174.0);
    CHECK(config.sweep.base.pathloss_exponent == 2.0);
    CHECK(config.output_path == "fig4_sumrate_vs_k.csv");

    const RunConfig empty = parse_config({});
    CHECK(empty.experiment == Experiment::fig4_sumrate_vs_k);
}

TEST_CASE("single override keeps everything else at defaults") {
    const RunConfig config = parse_config({"--trials", "10"});
    CHECK(config.sweep.trials == 10);
    CHECK(config.sweep.schemes.size() == 6);
    CHECK(config.sweep.sweep_values.size() == 10);
    CHECK(config.sweep.master_seed == 1);
}

TEST_CASE("unknown keys are rejected with a suggestion") {
    try {
        parse_config({"--treshold", "-70"});
        FAIL("expected CliError");
    } catch (const CliError& error) {
        const std::string message = error.what();
        CHECK(message.find("treshold") != std::string::npos);
        CHECK(message.find("threshold") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_config({"--trials"}), CliError);            // missing value
    CHECK_THROWS_AS(parse_config({"trials=5"}), CliError);            // not a flag
    CHECK_THROWS_AS(parse_config({"--trials", "abc"}), CliError);     // type mismatch
    CHECK_THROWS_AS(parse_config({"--trials", "0"}), CliError);       // out of range
    CHECK_THROWS_AS(parse_config({"--mu", "7"}), CliError);           // out of range
    CHECK_THROWS_AS(parse_config({"--experiment", "fig9"}), CliError);
    CHECK_THROWS_AS(parse_config({"--scheme", "lbtlbr"}), CliError);
}

TEST_CASE("config file with flag overrides") {
    TempFile file("mmcoexist_test_config.txt");
    {
        std::ofstream out(file.path);
        out << "# comment line\n"
            << "experiment=fig6_sumrate_vs_txbw\n"
            << "trials = 7\n"
            << "k=25\n"
            << "scheme=dir-lbt,omni-lbt\n";
    }

    const RunConfig from_file = parse_config({"--config", file.path.string()});
    CHECK(from_file.experiment == Experiment::fig6_sumrate_vs_txbw);
    CHECK(from_file.sweep.trials == 7);
    CHECK(from_file.sweep.base.num_pairs == 25);
    CHECK(from_file.sweep.sweep_variable == SweepVariable::theta_tx_deg);
    REQUIRE(from_file.sweep.schemes.size() == 2);
    CHECK(from_file.sweep.schemes[0] == SchemeId::dir_lbt);

    const RunConfig overridden =
        parse_config({"--config", file.path.string(), "--trials", "9", "--scheme", "dir-lbt-dir-lbr"});
    CHECK(overridden.sweep.trials == 9);
    REQUIRE(overridden.sweep.schemes.size() == 1);
    CHECK(overridden.sweep.schemes[0] == SchemeId::dir_lbt_dir_lbr);

    CHECK_THROWS_AS(parse_config({"--config", "/no/such/file.cfg"}), CliError);

    TempFile bad("mmcoexist_test_bad_config.txt");
    {
        std::ofstream out(bad.path);
        out << "trails=5\n";
    }
    try {
        parse_config({"--config", bad.path.string()});
        FAIL("expected CliError");
    } catch (const CliError& error) {
        CHECK(std::string(error.what()).find("trails") != std::string::npos);
        CHECK(std::string(error.what()).find("trials") != std::string::npos);
    }
}

TEST_CASE("pinning a variable collapses its own sweep") {
    const RunConfig pinned_k = parse_config({"--experiment", "fig4_sumrate_vs_k", "--k", "12"});
    REQUIRE(pinned_k.sweep.sweep_values.size() == 1);
    CHECK(pinned_k.sweep.sweep_values[0] == 12.0);

    const RunConfig pinned_other = parse_config({"--experiment", "fig6_sumrate_vs_txbw", "--k", "12"});
    CHECK(pinned_other.sweep.base.num_pairs == 12);
    CHECK(pinned_other.sweep.sweep_values.size() == 10);  // theta grid untouched

    const RunConfig custom = parse_config(
        {"--experiment", "custom", "--sweep-var", "theta-rx-deg", "--sweep-values", "90,180,360"});
    CHECK(custom.sweep.sweep_variable == SweepVariable::theta_rx_deg);
    REQUIRE(custom.sweep.sweep_values.size() == 3);
    CHECK(custom.sweep.sweep_values[2] == 360.0);
}

TEST_CASE("slots_overhead experiment writes the timing table") {
    TempFile out("mmcoexist_test_slots.csv");
    RunConfig config = parse_config({"--experiment", "slots_overhead", "--out", out.path.string()});
    CHECK(run(config) == 0);
    const std::string csv = read_file(out.path);
    CHECK(csv.rfind("mu,scs_khz,slot_length_us,mcot_ms,unoccupied_percent\n", 0) == 0);
    CHECK(csv.find("3,120,125,9,1.389\n") != std::string::npos);
    CHECK(csv.find("4,240,62.5,9,0.6944\n") != std::string::npos);

    TempFile single("mmcoexist_test_slots_mu0.csv");
    config = parse_config({"--experiment", "slots_overhead", "--mu", "0", "--mcot-ms", "9",
                           "--out", single.path.string()});
    CHECK(run(config) == 0);
    const std::string csv_mu0 = read_file(single.path);
    CHECK(csv_mu0.find("0,15,1000,9,11.11\n") != std::string::npos);
    CHECK(csv_mu0.find("4,240") == std::string::npos);
}

TEST_CASE("callflow_demo matches the golden trace") {
    TempFile out("mmcoexist_test_callflow.txt");
    const RunConfig config =
        parse_config({"--experiment", "callflow_demo", "--out", out.path.string()});
    CHECK(run(config) == 0);
    CHECK(read_file(out.path) ==
          "slot=0 event=data_arrival\n"
          "slot=0 event=lbt_idle\n"
          "slot=0 event=rtotx_sent\n"
          "slot=0 event=lbr_idle\n"
          "slot=0 event=rtorx_sent\n"
          "slot=1 event=lbt_idle\n"
          "slot=1 event=data_tx_start\n"
          "slot=5 event=data_arrival\n"
          "slot=5 event=lbt_idle\n"
          "slot=5 event=rtotx_sent\n"
          "slot=5 event=lbr_busy\n"
          "slot=5 event=deferred\n"
          "slot=6 event=lbr_busy\n"
          "slot=6 event=deferred\n"
          "slot=7 event=lbr_busy\n"
          "slot=7 event=deferred\n"
          "slot=8 event=lbr_idle\n"
          "slot=8 event=rtorx_sent\n"
          "slot=9 event=lbt_idle\n"
          "slot=9 event=data_tx_start\n");
}

TEST_CASE("sweep experiment CSV is reproducible byte for byte") {
    TempFile first("mmcoexist_test_sweep_a.csv");
    TempFile second("mmcoexist_test_sweep_b.csv");
    const std::vector<std::string> base_args = {
        "--experiment", "fig4_sumrate_vs_k", "--trials", "8", "--seed", "77",
        "--sweep-values", "3,6", "--scheme", "dir-lbt,dir-lbt-dir-lbr"};

    std::vector<std::string> args = base_args;
    args.insert(args.end(), {"--out", first.path.string()});
    CHECK(run(parse_config(args)) == 0);

    args = base_args;
    args.insert(args.end(), {"--out", second.path.string()});
    CHECK(run(parse_config(args)) == 0);

    const std::string csv = read_file(first.path);
    CHECK(csv == read_file(second.path));
    CHECK(csv.rfind("scheme,sweep_var,sweep_value,trials,", 0) == 0);
    CHECK(csv.find("dir-lbt,k,3,8,") != std::string::npos);
    CHECK(csv.find("dir-lbt-dir-lbr,k,6,8,") != std::string::npos);

    // exit with an I/O failure for an unwritable output path
    const RunConfig bad = parse_config({"--experiment", "slots_overhead", "--out",
                                        "/nonexistent-dir/slots.csv"});
    CHECK_THROWS_AS(run(bad), CliError);
}

TEST_CASE("cli entry point exit codes") {
    {
        const char* argv[] = {"mmcoexist", "--treshold", "1"};
        CHECK(cli_main(3, const_cast<char**>(argv)) == 2);
    }
    {
        TempFile out("mmcoexist_test_exit.csv");
        const std::string out_flag = "--out=" + out.path.string();
        const char* argv[] = {"mmcoexist", "--experiment", "slots_overhead", out_flag.c_str()};
        CHECK(cli_main(4, const_cast<char**>(argv)) == 0);
    }
    {
        const char* argv[] = {"mmcoexist", "--help"};
        CHECK(cli_main(2, const_cast<char**>(argv)) == 0);
    }
}
