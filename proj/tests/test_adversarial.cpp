#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "covris/adversarial.hpp"
#include "fixtures.hpp"

using namespace covris;
using testfx::fx;

namespace {

ComplexFrame tx_frame_at_30dbm(std::uint64_t seed, std::size_t m = 16) {
    Rng rng(seed);
    return scale_to_power(qpsk_frame(m, rng), PowerDbm{30.0});
}

/// Linear-sweep oracle: smallest epsilon on the craft ray that flips the
/// label, refined by re-sweeping the bracketing cell until the grid step is
/// below eps_acc. Returns a negative value when no grid point flips.
double sweep_oracle(const DetectorModel& eve, const ComplexFrame& tx, Complex g_eve, double cap,
                    double eps_acc) {
    ComplexFrame y0(tx.size());
    for (std::size_t i = 0; i < tx.size(); ++i) y0[i] = g_eve * tx[i];
    const ComplexFrame dir = fgm_direction(eve, y0, g_eve);
    auto flips = [&](double eps) {
        ComplexFrame y(tx.size());
        for (std::size_t i = 0; i < tx.size(); ++i) y[i] = g_eve * (tx[i] - eps * dir[i]);
        return predict_label(eve, y) == Label::noise;
    };
    double lo = 0.0, hi = cap;
    bool found = false;
    while (true) {
        const double step = (hi - lo) / 256.0;
        double first = -1.0;
        for (int k = 1; k <= 256; ++k) {
            const double eps = lo + step * k;
            if (flips(eps)) {
                first = eps;
                break;
            }
        }
        if (first < 0.0) return found ? hi : -1.0;
        found = true;
        lo = first - step;
        hi = first;
        if (step <= eps_acc) return hi;
    }
}

}  // namespace

TEST_CASE("fgm direction is unit norm and conjugate-rotates with the gain") {
    const auto& f = fx();
    const ComplexFrame tx = tx_frame_at_30dbm(7);
    const Complex g = f.g_eve[2];
    ComplexFrame y0(tx.size());
    for (std::size_t i = 0; i < tx.size(); ++i) y0[i] = g * tx[i];

    const ComplexFrame dir = fgm_direction(f.eve, y0, g);
    CHECK(frame_norm(dir) == Catch::Approx(1.0).margin(1e-12));

    // positive real gain: direction parallel to the normalized raw gradient
    ComplexFrame grad = complex_input_gradient(f.eve, y0, Label::noise);
    const double gn = frame_norm(grad);
    REQUIRE(gn > 0.0);
    const ComplexFrame dir_real = fgm_direction(f.eve, y0, Complex(2.5, 0.0));
    for (std::size_t i = 0; i < dir_real.size(); ++i)
        CHECK(std::abs(dir_real[i] - grad[i] / gn) < 1e-9);

    // multiplying the gain by e^{j phi} rotates the direction by e^{-j phi}
    const double phi = 0.813;
    const Complex rot(std::cos(phi), std::sin(phi));
    const ComplexFrame dir_rot = fgm_direction(f.eve, y0, g * rot);
    for (std::size_t i = 0; i < dir.size(); ++i)
        CHECK(std::abs(dir_rot[i] - dir[i] * std::conj(rot)) < 1e-9);
}

TEST_CASE("fgm direction error cases") {
    const auto& f = fx();
    const ComplexFrame tx = tx_frame_at_30dbm(8);
    CHECK_THROWS_AS(fgm_direction(f.eve, tx, Complex(0.0, 0.0)), DegenerateChannelError);
    const DetectorModel flat = zero_model(DetectorArch{});
    CHECK_THROWS_AS(fgm_direction(flat, tx, Complex(1.0, 0.0)), ZeroGradientError);
}

TEST_CASE("craft returns zero immediately when already misclassified") {
    DetectorModel always_noise = zero_model(DetectorArch{});
    always_noise.out_b = {0.0, 10.0};
    const ComplexFrame tx = tx_frame_at_30dbm(9);
    const auto crafted = craft(always_noise, tx, Complex(3.0, 1.0), make_budget(PowerDbm{25.0}, 16));
    CHECK(crafted.success);
    CHECK(crafted.epsilon == 0.0);
    for (const Complex& d : crafted.delta) CHECK(d == Complex(0.0, 0.0));
}

TEST_CASE("craft degrades to a zero perturbation when no gradient exists") {
    DetectorModel always_signal = zero_model(DetectorArch{});
    always_signal.out_b = {10.0, 0.0};
    const ComplexFrame tx = tx_frame_at_30dbm(10);
    const auto crafted = craft(always_signal, tx, Complex(3.0, 1.0), make_budget(PowerDbm{25.0}, 16));
    CHECK_FALSE(crafted.success);
    CHECK(crafted.epsilon == 0.0);
    for (const Complex& d : crafted.delta) CHECK(d == Complex(0.0, 0.0));
}

TEST_CASE("craft returns the full budget when even the cap fails to flip") {
    const auto& f = fx();
    // strongest eavesdropper codeword, starved budget
    std::size_t strong = 0;
    for (std::size_t i = 1; i < f.g_eve.size(); ++i)
        if (std::abs(f.g_eve[i]) > std::abs(f.g_eve[strong])) strong = i;
    const PerturbationBudget budget = make_budget(PowerDbm{-10.0}, 16);
    const double cap = std::sqrt(frame_energy_budget(budget.p_max, 16));
    int failures = 0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const ComplexFrame tx = tx_frame_at_30dbm(100 + s);
        const auto crafted = craft(f.eve, tx, f.g_eve[strong], budget);
        CHECK(frame_energy(crafted.delta) <= frame_energy_budget(budget.p_max, 16) * (1.0 + 1e-9));
        if (!crafted.success && crafted.epsilon > 0.0) {
            ++failures;
            CHECK(crafted.epsilon == Catch::Approx(cap));
        }
    }
    CHECK(failures > 0);
}

TEST_CASE("bisection epsilon matches the linear-sweep oracle") {
    const auto& f = fx();
    const PerturbationBudget budget = make_budget(PowerDbm{25.0}, 16);
    const double cap = std::sqrt(frame_energy_budget(budget.p_max, 16));
    int compared = 0, agreed = 0;
    for (std::uint64_t s = 0; s < 25; ++s) {
        const ComplexFrame tx = tx_frame_at_30dbm(200 + s);
        const Complex g = f.g_eve[(s % 4) + 1];
        const auto crafted = craft(f.eve, tx, g, budget);
        if (!crafted.success || crafted.epsilon == 0.0) continue;
        const double oracle = sweep_oracle(f.eve, tx, g, cap, budget.eps_acc);
        if (oracle < 0.0) continue;
        ++compared;
        if (std::abs(crafted.epsilon - oracle) <= budget.eps_acc) ++agreed;
    }
    REQUIRE(compared >= 15);
    CHECK(agreed >= compared - 1);
}

TEST_CASE("enlarging the budget never raises the returned epsilon") {
    const auto& f = fx();
    const PerturbationBudget small = make_budget(PowerDbm{20.0}, 16);
    const PerturbationBudget big = make_budget(PowerDbm{25.0}, 16);
    int both = 0;
    for (std::uint64_t s = 0; s < 40; ++s) {
        const ComplexFrame tx = tx_frame_at_30dbm(300 + s);
        const Complex g = f.g_eve[(s % 5) + 1];
        const auto c_small = craft(f.eve, tx, g, small);
        const auto c_big = craft(f.eve, tx, g, big);
        if (c_small.success && c_big.success && c_small.epsilon > 0.0) {
            ++both;
            CHECK(c_big.epsilon <= c_small.epsilon + big.eps_acc);
        }
    }
    CHECK(both >= 10);
}

TEST_CASE("crafting is deterministic") {
    const auto& f = fx();
    const ComplexFrame tx = tx_frame_at_30dbm(17);
    const PerturbationBudget budget = make_budget(PowerDbm{25.0}, 16);
    const auto a = craft(f.eve, tx, f.g_eve[3], budget);
    const auto b = craft(f.eve, tx, f.g_eve[3], budget);
    CHECK(a.epsilon == b.epsilon);
    CHECK(a.success == b.success);
    for (std::size_t i = 0; i < a.delta.size(); ++i) CHECK(a.delta[i] == b.delta[i]);
}

TEST_CASE("crafted norm equals epsilon and respects the budget") {
    const auto& f = fx();
    const PerturbationBudget budget = make_budget(PowerDbm{15.0}, 16);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const ComplexFrame tx = tx_frame_at_30dbm(400 + s);
        const auto crafted = craft(f.eve, tx, f.g_eve[(s % 7) + 1], budget);
        CHECK(frame_norm(crafted.delta) == Catch::Approx(crafted.epsilon).margin(1e-9));
        CHECK(frame_energy(crafted.delta) <=
              frame_energy_budget(budget.p_max, 16) * (1.0 + 1e-9));
    }
}

TEST_CASE("apply_perturbation superposition") {
    const auto& f = fx();
    const ComplexFrame tx = tx_frame_at_30dbm(18);
    CraftedPerturbation zero;
    zero.delta.assign(16, Complex(0.0, 0.0));
    const ComplexFrame same = apply_perturbation(tx, zero);
    for (std::size_t i = 0; i < tx.size(); ++i) CHECK(same[i] == tx[i]);

    const auto crafted = craft(f.eve, tx, f.g_eve[2], make_budget(PowerDbm{25.0}, 16));
    const ComplexFrame out = apply_perturbation(tx, crafted);
    const double bound = frame_norm(tx) + crafted.epsilon;
    CHECK(frame_energy(out) <= bound * bound + 1e-9);

    // channel linearity: g*(x+delta) = g*x + g*delta
    const Complex g = f.g_eve[2];
    for (std::size_t i = 0; i < out.size(); ++i)
        CHECK(std::abs(g * out[i] - (g * tx[i] + g * crafted.delta[i])) < 1e-12);

    CraftedPerturbation wrong;
    wrong.delta.assign(8, Complex(0.0, 0.0));
    CHECK_THROWS_AS(apply_perturbation(tx, wrong), std::invalid_argument);
}

TEST_CASE("perturbation power received at the receiver matches the analytic value") {
    const auto& f = fx();
    CraftedPerturbation crafted;
    for (std::uint64_t s = 19; s < 40 && crafted.epsilon == 0.0; ++s)
        crafted = craft(f.eve, tx_frame_at_30dbm(s), f.g_eve[2], make_budget(PowerDbm{25.0}, 16));
    REQUIRE(crafted.epsilon > 0.0);
    const Complex g_r = f.g_rx[2];
    double measured = 0.0;
    for (const Complex& d : crafted.delta) measured += std::norm(g_r * d);
    measured /= static_cast<double>(crafted.delta.size());
    const double analytic = std::norm(g_r) * crafted.epsilon * crafted.epsilon / 16.0;
    CHECK(measured == Catch::Approx(analytic).epsilon(0.01));
}

TEST_CASE("descent along the ray: probability at epsilon is below the halfway point") {
    const auto& f = fx();
    const PerturbationBudget budget = make_budget(PowerDbm{25.0}, 16);
    int counted = 0, descended = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const ComplexFrame tx = tx_frame_at_30dbm(500 + s);
        const Complex g = f.g_eve[(s % 6) + 1];
        const auto crafted = craft(f.eve, tx, g, budget);
        if (crafted.epsilon == 0.0) continue;
        auto p_signal_at = [&](double scale) {
            ComplexFrame y(tx.size());
            for (std::size_t i = 0; i < tx.size(); ++i)
                y[i] = g * (tx[i] + scale * crafted.delta[i]);
            return forward(f.eve, frame_to_iq(y))[0];
        };
        ++counted;
        if (p_signal_at(1.0) <= p_signal_at(0.5)) ++descended;
    }
    REQUIRE(counted >= 50);
    CHECK(descended * 10 >= counted * 9);
}
