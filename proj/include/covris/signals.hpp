#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "covris/rng.hpp"

namespace covris {

using Complex = std::complex<double>;

/// Length-M vector of complex baseband samples: a transmit frame, a
/// perturbation, or a received frame.
using ComplexFrame = std::vector<Complex>;

/// Power in dBm. Conversions follow P_watts = 10^((dBm-30)/10).
struct PowerDbm {
    double dbm = 0.0;
};

/// Circularly-symmetric complex Gaussian noise, `variance` watts per sample.
struct NoiseModel {
    double variance = 0.0;
};

inline double dbm_to_watts(PowerDbm p) { return std::pow(10.0, (p.dbm - 30.0) / 10.0); }

inline PowerDbm watts_to_dbm(double w) { return PowerDbm{10.0 * std::log10(w) + 30.0}; }

/// Mean per-sample power sum|x_i|^2 / M.
inline double mean_power(const ComplexFrame& frame) {
    double acc = 0.0;
    for (const Complex& s : frame) acc += std::norm(s);
    return frame.empty() ? 0.0 : acc / static_cast<double>(frame.size());
}

inline double frame_energy(const ComplexFrame& frame) {
    double acc = 0.0;
    for (const Complex& s : frame) acc += std::norm(s);
    return acc;
}

inline double frame_norm(const ComplexFrame& frame) { return std::sqrt(frame_energy(frame)); }

/// Uniform QPSK frame of m samples drawn from {(+-1 +-j)/sqrt(2)};
/// unit average power, one symbol per I/Q sample.
inline ComplexFrame qpsk_frame(std::size_t m, Rng& rng) {
    if (m == 0) throw std::invalid_argument("qpsk_frame: m must be >= 1");
    static constexpr double kInvSqrt2 = 0.70710678118654752440;
    ComplexFrame frame(m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::uint64_t b = rng.bits();
        frame[i] = Complex((b & 1) ? kInvSqrt2 : -kInvSqrt2, (b & 2) ? kInvSqrt2 : -kInvSqrt2);
    }
    return frame;
}

/// Rescales the frame so its per-sample average power equals dbm_to_watts(p).
/// Sample directions are preserved; an all-zero frame is returned unchanged.
inline ComplexFrame scale_to_power(const ComplexFrame& frame, PowerDbm p) {
    if (frame.empty()) throw std::invalid_argument("scale_to_power: empty frame");
    const double current = mean_power(frame);
    if (current == 0.0) return frame;
    const double factor = std::sqrt(dbm_to_watts(p) / current);
    ComplexFrame out(frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i) out[i] = frame[i] * factor;
    return out;
}

/// Draws one CN(0, variance) sample: each real dimension carries variance/2.
inline Complex complex_gaussian(double variance, Rng& rng) {
    const double s = std::sqrt(variance / 2.0);
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    return Complex(s * re, s * im);
}

/// frame + n with n_i ~ CN(0, variance) i.i.d. Zero variance returns the
/// frame unchanged without consuming the stream.
inline ComplexFrame add_noise(const ComplexFrame& frame, NoiseModel noise, Rng& rng) {
    if (noise.variance < 0.0) throw std::invalid_argument("add_noise: negative variance");
    if (noise.variance == 0.0) return frame;
    ComplexFrame out(frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i) out[i] = frame[i] + complex_gaussian(noise.variance, rng);
    return out;
}

/// Pure-noise frame of m samples, n_i ~ CN(0, variance).
inline ComplexFrame noise_frame(std::size_t m, double variance, Rng& rng) {
    ComplexFrame out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = complex_gaussian(variance, rng);
    return out;
}

}  // namespace covris
