// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "mmcoexist/antenna.hpp"
#include "mmcoexist/rng.hpp"
#include "mmcoexist/units.hpp"

using namespace mmcoexist;

namespace {

// Independent evaluation of the multipath matrix: inline complex exponentials,
// no shared code with channel_matrix / ula_response.
std::complex<double> oracle_channel_entry(const PathSet& paths, int n, int m) {
    const double num_tx = paths.tx_elements;
    const double num_rx = paths.rx_elements;
    const double num_paths = static_cast<double>(paths.paths.size());
    std::complex<double> acc{0.0, 0.0};
    for (const PathComponent& p : paths.paths) {
        const std::complex<double> rx_n =
            std::polar(1.0 / std::sqrt(num_rx), -kPi * n * std::sin(p.aoa_rad));
        const std::complex<double> tx_m =
            std::polar(1.0 / std::sqrt(num_tx), -kPi * m * std::sin(p.aod_rad));
        acc += p.gain * rx_n * std::conj(tx_m);
    }
    return std::sqrt(num_tx * num_rx / num_paths) * acc;
}

}  // namespace

TEST_CASE("cone gain") {
    SUBCASE("boresight hits the mainlobe") {
        const BeamPattern pattern{deg_to_rad(60.0), 10.0, 0.0, 1.2};
        CHECK(cone_gain(pattern, 1.2) == 10.0);
    }

    SUBCASE("opposite direction with zero sidelobe is a perfect null") {
        const BeamPattern pattern{deg_to_rad(60.0), 10.0, 0.0, 0.3};
        CHECK(cone_gain(pattern, 0.3 + kPi) == 0.0);
    }

    SUBCASE("full-circle beamwidth is omnidirectional") {
        const BeamPattern pattern{kTwoPi, 7.5, 0.0, 0.0};
        for (double direction = -7.0; direction <= 7.0; direction += 0.37) {
            CHECK(cone_gain(pattern, direction) == 7.5);
        }
    }

    SUBCASE("offset of exactly half the beamwidth counts as mainlobe") {
        const BeamPattern pattern{deg_to_rad(90.0), 4.0, 1.0, 0.0};
        CHECK(cone_gain(pattern, deg_to_rad(45.0)) == 4.0);
        CHECK(cone_gain(pattern, deg_to_rad(45.001)) == 1.0);
    }

    SUBCASE("directions wrap across the 2*pi seam") {
        const BeamPattern pattern{deg_to_rad(60.0), 10.0, 0.0, 0.1};
        CHECK(cone_gain(pattern, 0.1 + kTwoPi) == 10.0);
        CHECK(cone_gain(pattern, 0.1 - kTwoPi) == 10.0);
    }

    SUBCASE("exactly one mainlobe interval per wrap") {
        const BeamPattern pattern{deg_to_rad(60.0), 10.0, 0.0, 2.0};
        int transitions = 0;
        double previous = cone_gain(pattern, -kPi);
        const int steps = 5000;
        for (int i = 1; i <= steps; ++i) {
            const double gain = cone_gain(pattern, -kPi + kTwoPi * i / steps);
            if (gain != previous) {
                ++transitions;
            }
            previous = gain;
        }
        CHECK(transitions == 2);
    }

    SUBCASE("widening the beam never loses gain") {
        SplitMix64 rng(31);
        for (int i = 0; i < 300; ++i) {
            const double narrow = rng.uniform(0.01, kTwoPi);
            const double wide = rng.uniform(narrow, kTwoPi);
            const double sidelobe = rng.uniform(0.0, 1.0);
            const double mainlobe = rng.uniform(sidelobe, 20.0);
            const double boresight = rng.uniform(0.0, kTwoPi);
            const double direction = rng.uniform(-10.0, 10.0);
            CHECK(cone_gain({wide, mainlobe, sidelobe, boresight}, direction) >=
                  cone_gain({narrow, mainlobe, sidelobe, boresight}, direction));
        }
    }

    SUBCASE("pattern validation") {
        CHECK_THROWS_AS(validate(BeamPattern{0.0, 1.0, 0.0, 0.0}), std::invalid_argument);
        CHECK_THROWS_AS(validate(BeamPattern{kTwoPi + 0.1, 1.0, 0.0, 0.0}), std::invalid_argument);
        CHECK_THROWS_AS(validate(BeamPattern{1.0, 1.0, 2.0, 0.0}), std::invalid_argument);
        CHECK_THROWS_AS(validate(BeamPattern{1.0, 1.0, -0.5, 0.0}), std::invalid_argument);
        CHECK_NOTHROW(validate(BeamPattern{kTwoPi, 1.0, 1.0, 0.0}));
    }
}

TEST_CASE("ULA response") {
    SUBCASE("broadside array is a uniform real vector") {
        const BeamVector e = ula_response(4, 0.0);
        REQUIRE(e.size() == 4);
        for (const std::complex<double>& v : e) {
            CHECK(v.real() == doctest::Approx(0.5).epsilon(1e-15));
            CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-15));
        }
    }

    SUBCASE("endfire two-element array alternates sign") {
        const BeamVector e = ula_response(2, kPi / 2.0);
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        CHECK(e[0].real() == doctest::Approx(inv_sqrt2).epsilon(1e-12));
        CHECK(e[0].imag() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(e[1].real() == doctest::Approx(-inv_sqrt2).epsilon(1e-12));
        CHECK(std::abs(e[1].imag()) < 1e-12);
    }

    SUBCASE("unit norm for every element count") {
        SplitMix64 rng(8);
        for (int m = 1; m <= 64; ++m) {
            const BeamVector e = ula_response(m, rng.uniform(-kPi, kPi));
            double norm_sq = 0.0;
            for (const std::complex<double>& v : e) {
                norm_sq += std::norm(v);
            }
            CHECK(std::abs(norm_sq - 1.0) < 1e-12);
        }
    }

    SUBCASE("zero elements is rejected") {
        CHECK_THROWS_AS(ula_response(0, 0.0), std::invalid_argument);
    }
}

TEST_CASE("channel matrix") {
    SUBCASE("single scalar path collapses to its gain") {
        PathSet paths;
        paths.tx_elements = 1;
        paths.rx_elements = 1;
        paths.paths = {{{1.0, 0.0}, 0.7, -1.1}};
        const CMatrix h = channel_matrix(paths);
        REQUIRE(h.rows == 1);
        REQUIRE(h.cols == 1);
        CHECK(h(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(h(0, 0).imag()) < 1e-12);
    }

    SUBCASE("single path yields a rank-one matrix") {
        PathSet paths;
        paths.tx_elements = 4;
        paths.rx_elements = 3;
        paths.paths = {{{0.8, 0.4}, 0.9, 2.0}};
        const CMatrix h = channel_matrix(paths);
        for (int n = 0; n < h.rows; ++n) {
            for (int m = 0; m < h.cols; ++m) {
                // all 2x2 minors with row 0 / column 0 vanish for rank one
                const std::complex<double> minor = h(n, m) * h(0, 0) - h(n, 0) * h(0, m);
                CHECK(std::abs(minor) < 1e-12);
            }
        }
    }

    SUBCASE("two-path matrix matches the independent summation oracle") {
        PathSet paths;
        paths.tx_elements = 4;
        paths.rx_elements = 4;
        paths.paths = {{{0.6, 0.3}, 0.4, 1.9}, {{-0.3, 0.6}, -2.2, 0.5}};
        const CMatrix h = channel_matrix(paths);
        for (int n = 0; n < 4; ++n) {
            for (int m = 0; m < 4; ++m) {
                const std::complex<double> expected = oracle_channel_entry(paths, n, m);
                CHECK(std::abs(h(n, m) - expected) < 1e-12);
            }
        }
    }

    SUBCASE("empty path set is rejected") {
        CHECK_THROWS_AS(channel_matrix(PathSet{}), std::invalid_argument);
    }
}

TEST_CASE("exact beamforming gain") {
    SUBCASE("steered single line-of-sight path reaches M*N") {
        for (int m : {2, 4, 8}) {
            PathSet paths;
            paths.tx_elements = m;
            paths.rx_elements = m;
            paths.paths = {{{1.0, 0.0}, 0.35, -0.8}};
            const CMatrix h = channel_matrix(paths);
            const BeamVector w = ula_response(m, 0.35);
            const BeamVector r = ula_response(m, -0.8);
            const double gain = total_gain_exact(r, h, w);
            CHECK(std::abs(gain - double(m) * m) / (double(m) * m) < 1e-9);
        }
    }

    SUBCASE("transmit beam orthogonal to the only path nulls the link") {
        PathSet paths;
        paths.tx_elements = 2;
        paths.rx_elements = 2;
        paths.paths = {{{1.0, 0.0}, 0.6, 0.2}};
        const CMatrix h = channel_matrix(paths);
        const BeamVector e_tx = ula_response(2, 0.6);
        // (conj(b), -conj(a)) is orthogonal to (a, b) and already unit norm
        const BeamVector w = {std::conj(e_tx[1]), -std::conj(e_tx[0])};
        const BeamVector r = ula_response(2, 0.2);
        CHECK(total_gain_exact(r, h, w) < 1e-20);
    }

    SUBCASE("omnidirectional receiver modeled as a single element") {
        for (int m : {2, 4, 8}) {
            PathSet paths;
            paths.tx_elements = m;
            paths.rx_elements = 1;
            paths.paths = {{{0.9, -0.2}, 1.1, 0.0}};
            const CMatrix h = channel_matrix(paths);
            const BeamVector w = ula_response(m, 1.1);
            const BeamVector r_omni = {{1.0, 0.0}};
            const double expected = m * std::norm(paths.paths[0].gain);
            CHECK(total_gain_exact(r_omni, h, w) == doctest::Approx(expected).epsilon(1e-9));
        }
    }

    SUBCASE("invariant under a global phase rotation of either beam") {
        PathSet paths;
        paths.tx_elements = 4;
        paths.rx_elements = 4;
        paths.paths = {{{0.6, 0.3}, 0.4, 1.9}, {{-0.3, 0.6}, -2.2, 0.5}};
        const CMatrix h = channel_matrix(paths);
        const BeamVector w = ula_response(4, 0.4);
        const BeamVector r = ula_response(4, 1.9);
        const double base = total_gain_exact(r, h, w);
        SplitMix64 rng(55);
        for (int i = 0; i < 50; ++i) {
            const std::complex<double> phase = std::polar(1.0, rng.uniform(0.0, kTwoPi));
            BeamVector w_rotated = w;
            BeamVector r_rotated = r;
            for (auto& v : w_rotated) {
                v *= phase;
            }
            for (auto& v : r_rotated) {
                v *= phase;
            }
            CHECK(total_gain_exact(r, h, w_rotated) == doctest::Approx(base).epsilon(1e-12));
            CHECK(total_gain_exact(r_rotated, h, w) == doctest::Approx(base).epsilon(1e-12));
        }
    }

    SUBCASE("dimension mismatch throws") {
        PathSet paths;
        paths.tx_elements = 4;
        paths.rx_elements = 2;
        paths.paths = {{{1.0, 0.0}, 0.0, 0.0}};
        const CMatrix h = channel_matrix(paths);
        CHECK_THROWS_AS(total_gain_exact(ula_response(4, 0.0), h, ula_response(4, 0.0)),
                        std::invalid_argument);
        CHECK_THROWS_AS(total_gain_exact(ula_response(2, 0.0), h, ula_response(2, 0.0)),
                        std::invalid_argument);
    }
}

TEST_CASE("cone-model total gain") {
    const double theta_tx = deg_to_rad(60.0);
    const double theta_rx = deg_to_rad(90.0);

    SUBCASE("mainlobe-to-mainlobe link multiplies the gains") {
        const BeamPattern tx{theta_tx, 10.0, 0.0, 0.0};
        const BeamPattern rx{theta_rx, 10.0, 0.0, kPi};
        CHECK(total_gain_cone(tx, rx, 0.0, kPi, 1.0) == 100.0);
    }

    SUBCASE("zero sidelobe annihilates the product") {
        const BeamPattern tx{theta_tx, 10.0, 0.0, 0.0};
        const BeamPattern rx{theta_rx, 10.0, 0.0, kPi};
        CHECK(total_gain_cone(tx, rx, kPi / 2.0, kPi, 1.0) == 0.0);
    }

    SUBCASE("omnidirectional unity receiver reduces to the transmit cone") {
        const BeamPattern tx{theta_tx, 10.0, 2.0, 0.4};
        const BeamPattern rx_omni{kTwoPi, 1.0, 0.0, 0.0};
        SplitMix64 rng(17);
        for (int i = 0; i < 100; ++i) {
            const double direction = rng.uniform(-kPi, kPi);
            CHECK(total_gain_cone(tx, rx_omni, direction, rng.uniform(-kPi, kPi), 0.7) ==
                  0.7 * cone_gain(tx, direction));
        }
    }

    SUBCASE("symmetric under swapping transmit and receive roles") {
        SplitMix64 rng(23);
        for (int i = 0; i < 100; ++i) {
            const BeamPattern a{rng.uniform(0.1, kTwoPi), rng.uniform(1.0, 20.0),
                                rng.uniform(0.0, 1.0), rng.uniform(0.0, kTwoPi)};
            const BeamPattern b{rng.uniform(0.1, kTwoPi), rng.uniform(1.0, 20.0),
                                rng.uniform(0.0, 1.0), rng.uniform(0.0, kTwoPi)};
            const double dir_ab = rng.uniform(-kPi, kPi);
            const double dir_ba = rng.uniform(-kPi, kPi);
            CHECK(total_gain_cone(a, b, dir_ab, dir_ba, 1.0) ==
                  total_gain_cone(b, a, dir_ba, dir_ab, 1.0));
        }
    }
}

TEST_CASE("beam config produces node patterns with the node's boresight") {
    BeamConfig beams;
    const BeamPattern tx = tx_pattern(beams, 1.25);
    CHECK(tx.boresight_rad == 1.25);
    CHECK(tx.beamwidth_rad == doctest::Approx(deg_to_rad(60.0)));
    CHECK(tx.mainlobe_gain == 10.0);
    CHECK(tx.sidelobe_gain == 0.0);
    const BeamPattern rx = rx_pattern(beams, -0.5);
    CHECK(rx.beamwidth_rad == doctest::Approx(deg_to_rad(90.0)));
    CHECK(rx.boresight_rad == -0.5);

    beams.theta_tx_rad = 0.0;
    CHECK_THROWS_AS(validate(beams), std::invalid_argument);
}
