#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

namespace covris {

/// splitmix64 finalizer; good enough to decorrelate derived seed streams.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return mix64(a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2)));
}

/// Deterministic per-worker stream derivation: master seed folded with a tag
/// sequence such as {ris_index, power_index, side}. Never share one stream
/// between workers; derive one per cell instead.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags) {
    std::uint64_t s = mix64(master + 0x632be59bd9b4e019ull);
    for (std::uint64_t t : tags) s = mix_seed(s, t);
    return s;
}

/// Seeded random stream. All distribution transforms are implemented here so
/// sequences are pinned to the engine output and reproduce bit-exactly.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t bits() { return eng_(); }

    /// Uniform double in [0, 1), 53 significant bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; the spare value is cached.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
        const double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    /// Uniform integer in [0, n). Modulo bias is far below anything the
    /// simulations can resolve.
    std::uint64_t below(std::uint64_t n) { return eng_() % n; }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Seeded Fisher-Yates; std::shuffle is not pinned across standard libraries.
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = rng.below(i);
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace covris
