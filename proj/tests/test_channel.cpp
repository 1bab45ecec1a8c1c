#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "covris/channel.hpp"
#include "covris/experiment.hpp"

using namespace covris;

namespace {

double norm2(const std::vector<Complex>& v) {
    double acc = 0.0;
    for (const Complex& x : v) acc += std::norm(x);
    return std::sqrt(acc);
}

}  // namespace

TEST_CASE("array response values and norms") {
    const auto broadside = array_response(90.0, 4, std::numbers::pi);
    for (const Complex& a : broadside) {
        CHECK(a.real() == Catch::Approx(0.5).margin(1e-9));
        CHECK(a.imag() == Catch::Approx(0.0).margin(1e-9));
    }

    for (double theta : {3.0, 41.5, 90.0, 133.7, 179.0})
        for (int n : {1, 2, 7, 16, 64})
            CHECK(norm2(array_response(theta, n, std::numbers::pi)) == Catch::Approx(1.0).margin(1e-9));

    const auto endfire = array_response(0.0, 2, std::numbers::pi);
    CHECK(endfire[0].real() == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-12));
    CHECK(endfire[1].real() == Catch::Approx(-1.0 / std::sqrt(2.0)).margin(1e-9));
    CHECK(endfire[1].imag() == Catch::Approx(0.0).margin(1e-9));

    CHECK_THROWS_AS(array_response(10.0, 0, std::numbers::pi), std::invalid_argument);
}

TEST_CASE("make_channel scaling") {
    const ChannelVector ch = make_channel(45.0, 1.0, 16, std::numbers::pi);
    CHECK(ch.h[0].real() == Catch::Approx(1.0).margin(1e-12));
    CHECK(ch.h[0].imag() == Catch::Approx(0.0).margin(1e-12));
    CHECK(norm2(ch.h) == Catch::Approx(std::sqrt(16.0)).margin(1e-9));
    for (const Complex& v : ch.h) CHECK(std::abs(v) == Catch::Approx(1.0).margin(1e-9));

    const ChannelVector dead = make_channel(45.0, 0.0, 8, std::numbers::pi);
    for (const Complex& v : dead.h) CHECK(v == Complex(0.0, 0.0));

    const ChannelVector scaled = make_channel(70.0, 2.5, 16, std::numbers::pi);
    CHECK(norm2(scaled.h) == Catch::Approx(std::sqrt(2.5 * 16.0)).margin(1e-9));

    // construction is deterministic
    const ChannelVector again = make_channel(70.0, 2.5, 16, std::numbers::pi);
    for (std::size_t k = 0; k < scaled.h.size(); ++k) CHECK(scaled.h[k] == again.h[k]);
}

TEST_CASE("dft codebook structure and orthogonality") {
    const auto book = dft_codebook(16);
    REQUIRE(book.size() == 16);  // K = N = 16 codewords
    for (const Complex& c : book[0].psi) {
        CHECK(c.real() == Catch::Approx(1.0).margin(1e-12));
        CHECK(c.imag() == Catch::Approx(0.0).margin(1e-12));
    }
    for (const auto& v : book)
        for (const Complex& c : v.psi) CHECK(std::abs(c) == Catch::Approx(1.0).margin(1e-12));

    for (std::size_t i = 0; i < book.size(); ++i) {
        for (std::size_t j = 0; j < book.size(); ++j) {
            Complex dot(0.0, 0.0);
            for (std::size_t k = 0; k < 16; ++k) dot += std::conj(book[i].psi[k]) * book[j].psi[k];
            if (i == j)
                CHECK(std::abs(dot - Complex(16.0, 0.0)) < 1e-9);
            else
                CHECK(std::abs(dot) < 1e-9);
        }
    }
}

TEST_CASE("binary codebook entries are +-1") {
    for (const auto& v : binary_codebook(16))
        for (const Complex& c : v.psi) {
            CHECK(c.imag() == 0.0);
            CHECK((c.real() == 1.0 || c.real() == -1.0));
        }
}

TEST_CASE("effective gain algebra") {
    ChannelVector one;
    one.h = {Complex(1.0, 0.0)};
    InteractionVector psi;
    psi.psi = {Complex(1.0, 0.0)};
    CHECK(effective_gain(one, psi, one, 1.0) == Complex(1.0, 0.0));

    const ChannelVector h_in = make_channel(45.0, 1.0, 16, std::numbers::pi);
    const ChannelVector h_out = make_channel(30.0, 1.0, 16, std::numbers::pi);
    const auto book = dft_codebook(16);
    const Complex g1 = effective_gain(h_in, book[3], h_out, 0.5);
    const Complex g2 = effective_gain(h_in, book[3], h_out, 1.0);
    CHECK(std::abs(g2 - 2.0 * g1) < 1e-12);

    InteractionVector bad;
    bad.psi.assign(8, Complex(1.0, 0.0));
    CHECK_THROWS_AS(effective_gain(h_in, bad, h_out, 1.0), std::invalid_argument);
}

TEST_CASE("best codeword matches a from-scratch exhaustive oracle") {
    const ChannelVector h_in = make_channel(45.0, 1.0, 16, std::numbers::pi);
    const ChannelVector h_out = make_channel(30.0, 1.0, 16, std::numbers::pi);
    const auto book = dft_codebook(16);

    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t i = 0; i < book.size(); ++i) {
        const double mag = std::abs(effective_gain(h_in, book[i], h_out, 1.0));
        if (mag > best_mag) {
            best_mag = mag;
            best = i;
        }
    }

    // oracle: rebuild every quantity from the raw formulas
    std::size_t oracle_best = 0;
    double oracle_mag = -1.0;
    const double ct_in = std::cos(45.0 * std::numbers::pi / 180.0);
    const double ct_out = std::cos(30.0 * std::numbers::pi / 180.0);
    for (int i = 0; i < 16; ++i) {
        Complex g(0.0, 0.0);
        for (int k = 0; k < 16; ++k) {
            const double phase = std::numbers::pi * k * (ct_in + ct_out) +
                                 2.0 * std::numbers::pi * k * i / 16.0;
            g += Complex(std::cos(phase), std::sin(phase));
        }
        if (std::abs(g) > oracle_mag) {
            oracle_mag = std::abs(g);
            oracle_best = static_cast<std::size_t>(i);
        }
    }
    CHECK(best == oracle_best);
    CHECK(best_mag == Catch::Approx(oracle_mag).margin(1e-9));
}

TEST_CASE("Cauchy-Schwarz bound holds on all codewords of all three topologies") {
    for (double theta_re : {10.0, 40.0, 70.0}) {
        Topology topo;
        topo.theta_re_deg = theta_re;
        const ChannelVector h_tr = make_channel(topo.theta_tr_deg, 1.0, 16, std::numbers::pi);
        for (Side side : {Side::receiver, Side::eavesdropper}) {
            const double theta_out = side == Side::receiver ? topo.theta_ri_deg : theta_re;
            const ChannelVector h_out = make_channel(theta_out, 1.0, 16, std::numbers::pi);
            const double bound = 1.0 * norm2(h_tr.h) * norm2(h_out.h);
            for (const Complex& g : codeword_gains(topo, side))
                CHECK(std::abs(g) <= bound + 1e-9);
        }
    }
}

TEST_CASE("noise calibration hits the requested mean SNR") {
    const std::vector<Complex> unit_gain = {Complex(1.0, 0.0)};
    CHECK(calibrate_noise(unit_gain, PowerDbm{30.0}, 0.0).variance == Catch::Approx(1.0));

    Topology fig2a;  // theta_re = 10 degrees
    const std::vector<Complex> gains = codeword_gains(fig2a, Side::receiver);
    const NoiseModel nm = calibrate_noise(gains, PowerDbm{30.0}, 5.0);

    std::vector<Complex> doubled = gains;
    for (Complex& g : doubled) g *= 2.0;
    CHECK(calibrate_noise(doubled, PowerDbm{30.0}, 5.0).variance == Catch::Approx(4.0 * nm.variance));

    // re-measure: mean linear SNR over the codebook back in dB
    double mean_lin = 0.0;
    for (const Complex& g : gains) mean_lin += std::norm(g) * 1.0 / nm.variance;
    mean_lin /= static_cast<double>(gains.size());
    CHECK(10.0 * std::log10(mean_lin) == Catch::Approx(5.0).margin(0.01));

    const std::vector<Complex> zeros(16, Complex(0.0, 0.0));
    CHECK_THROWS_AS(calibrate_noise(zeros, PowerDbm{30.0}, 5.0), DegenerateChannelError);
    CHECK_THROWS_AS(calibrate_noise(std::vector<Complex>{}, PowerDbm{30.0}, 5.0),
                    std::invalid_argument);
}
