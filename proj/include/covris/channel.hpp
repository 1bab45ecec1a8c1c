#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "covris/errors.hpp"
#include "covris/signals.hpp"

namespace covris {

/// Geometric line-of-sight channel between one node and the RIS:
/// h = sqrt(rho * n) * a(theta), so ||h|| = sqrt(rho * n) and every element
/// has magnitude sqrt(rho).
struct ChannelVector {
    std::vector<Complex> h;
    double theta_deg = 0.0;
    double rho = 1.0;

    std::size_t size() const { return h.size(); }
};

/// One RIS configuration drawn from the codebook; entries are unit modulus.
struct InteractionVector {
    std::vector<Complex> psi;
    int index = 0;
};

/// Physical RIS parameters: element count, per-element loss kappa in (0,1],
/// and the electrical inter-element phase constant d (pi at half-wavelength
/// spacing).
struct RisConfig {
    int n = 16;
    double kappa = 1.0;
    double d_phase = std::numbers::pi;
};

/// Unit-norm array response sqrt(1/n) * [1, e^{j d cos(theta)}, ...,
/// e^{j d (n-1) cos(theta)}].
inline std::vector<Complex> array_response(double theta_deg, int n, double d_phase) {
    if (n < 1) throw std::invalid_argument("array_response: n must be >= 1");
    const double cos_theta = std::cos(theta_deg * std::numbers::pi / 180.0);
    const double amp = std::sqrt(1.0 / static_cast<double>(n));
    std::vector<Complex> a(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double phase = d_phase * static_cast<double>(k) * cos_theta;
        a[static_cast<std::size_t>(k)] = amp * Complex(std::cos(phase), std::sin(phase));
    }
    return a;
}

inline ChannelVector make_channel(double theta_deg, double rho, int n, double d_phase) {
    if (rho < 0.0) throw std::invalid_argument("make_channel: rho must be >= 0");
    ChannelVector ch;
    ch.theta_deg = theta_deg;
    ch.rho = rho;
    ch.h = array_response(theta_deg, n, d_phase);
    const double gain = std::sqrt(rho * static_cast<double>(n));
    for (Complex& v : ch.h) v *= gain;
    return ch;
}

/// DFT codebook: K = n vectors, vector i has k-th entry e^{j 2 pi k i / n}.
inline std::vector<InteractionVector> dft_codebook(int n) {
    if (n < 1) throw std::invalid_argument("dft_codebook: n must be >= 1");
    std::vector<InteractionVector> book(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        InteractionVector& v = book[static_cast<std::size_t>(i)];
        v.index = i;
        v.psi.resize(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            const double phase = 2.0 * std::numbers::pi * static_cast<double>(k) * static_cast<double>(i) /
                                 static_cast<double>(n);
            v.psi[static_cast<std::size_t>(k)] = Complex(std::cos(phase), std::sin(phase));
        }
    }
    return book;
}

/// 1-bit alternative codebook: DFT phases quantized to {0, pi}, i.e. each
/// entry is the sign of the corresponding DFT entry's real part (+1 on ties).
inline std::vector<InteractionVector> binary_codebook(int n) {
    std::vector<InteractionVector> book = dft_codebook(n);
    for (InteractionVector& v : book)
        for (Complex& c : v.psi) c = (c.real() >= 0.0) ? Complex(1.0, 0.0) : Complex(-1.0, 0.0);
    return book;
}

/// Scalar end-to-end gain g = h_out^T Phi h_in with Phi = diag(kappa * psi):
/// sum_k h_out[k] * kappa * psi[k] * h_in[k].
inline Complex effective_gain(const ChannelVector& h_in, const InteractionVector& psi,
                              const ChannelVector& h_out, double kappa) {
    const std::size_t n = h_in.size();
    if (psi.psi.size() != n || h_out.size() != n)
        throw std::invalid_argument("effective_gain: length mismatch");
    Complex g(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) g += h_out.h[k] * (kappa * psi.psi[k]) * h_in.h[k];
    return g;
}

/// Noise variance giving the requested mean SNR over the supplied codeword
/// gains: sigma^2 = mean_i(|g_i|^2) * P / 10^(target/10).
inline NoiseModel calibrate_noise(std::span<const Complex> gains, PowerDbm signal_power,
                                  double target_snr_db) {
    if (gains.empty()) throw std::invalid_argument("calibrate_noise: no gains");
    double mean_g2 = 0.0;
    for (const Complex& g : gains) mean_g2 += std::norm(g);
    mean_g2 /= static_cast<double>(gains.size());
    if (mean_g2 == 0.0) throw DegenerateChannelError("calibrate_noise: all gains are zero");
    const double p = dbm_to_watts(signal_power);
    return NoiseModel{mean_g2 * p / std::pow(10.0, target_snr_db / 10.0)};
}

}  // namespace covris
