#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "covris/detector.hpp"
#include "covris/errors.hpp"
#include "covris/signals.hpp"

namespace covris {

/// Perturbation power budget. p_max is a per-sample average power, so the
/// frame-energy cap is M * dbm_to_watts(p_max); eps_acc is the absolute
/// bisection tolerance on the perturbation 2-norm.
struct PerturbationBudget {
    PowerDbm p_max;
    double eps_acc = 0.0;
};

inline double frame_energy_budget(PowerDbm p_max, std::size_t m) {
    return static_cast<double>(m) * dbm_to_watts(p_max);
}

/// Budget with eps_acc set relative to the norm cap (default 1e-4 of it).
inline PerturbationBudget make_budget(PowerDbm p_max, std::size_t m, double eps_acc_rel = 1e-4) {
    const double cap = std::sqrt(frame_energy_budget(p_max, m));
    return PerturbationBudget{p_max, eps_acc_rel * cap};
}

struct CraftedPerturbation {
    ComplexFrame delta;
    double epsilon = 0.0;
    bool success = false;
};

/// Channel-compensated targeted FGM direction: conj(g_eve) times the complex
/// gradient of the loss toward 'noise' at the eavesdropper observation,
/// normalized to unit 2-norm. The conjugation pre-rotates the transmit-side
/// perturbation so it arrives at the eavesdropper aligned with the raw
/// gradient.
inline ComplexFrame fgm_direction(const DetectorModel& eve_model, const ComplexFrame& y_eve,
                                  Complex g_eve) {
    if (g_eve == Complex(0.0, 0.0)) throw DegenerateChannelError("fgm_direction: zero effective gain");
    ComplexFrame grad = complex_input_gradient(eve_model, y_eve, Label::noise);
    const double nrm0 = frame_norm(grad);
    if (nrm0 == 0.0) throw ZeroGradientError("fgm_direction: loss gradient vanished");
    const Complex rot = std::conj(g_eve);
    for (Complex& v : grad) v *= rot;
    const double nrm = frame_norm(grad);
    for (Complex& v : grad) v /= nrm;
    return grad;
}

namespace detail {

inline ComplexFrame scaled_neg(const ComplexFrame& dir, double eps) {
    ComplexFrame d(dir.size());
    for (std::size_t i = 0; i < dir.size(); ++i) d[i] = -eps * dir[i];
    return d;
}

inline bool fools(const DetectorModel& eve_model, const ComplexFrame& tx, const ComplexFrame& dir,
                  double eps, Complex g_eve) {
    ComplexFrame y(tx.size());
    for (std::size_t i = 0; i < tx.size(); ++i) y[i] = g_eve * (tx[i] - eps * dir[i]);
    return predict_label(eve_model, y) == Label::noise;
}

}  // namespace detail

/// Minimal-power targeted perturbation against the eavesdropper (bisection
/// line search on the channel-compensated FGM ray).
///
/// The success test propagates the candidate through the effective channel,
/// g_eve * (x + delta), and crafting uses the noiseless observation; the
/// caller adds receiver noise during evaluation. If the clean observation is
/// already misclassified the zero perturbation is returned. If even the full
/// budget fails, the full-budget perturbation is returned with
/// success=false. Degenerate gains or a vanished gradient fall back to the
/// zero perturbation with success=false.
inline CraftedPerturbation craft(const DetectorModel& eve_model, const ComplexFrame& tx_frame,
                                 Complex g_eve, const PerturbationBudget& budget) {
    if (!(budget.eps_acc > 0.0)) throw std::invalid_argument("craft: eps_acc must be > 0");
    const std::size_t m = tx_frame.size();
    CraftedPerturbation out;
    out.delta.assign(m, Complex(0.0, 0.0));

    ComplexFrame y0(m);
    for (std::size_t i = 0; i < m; ++i) y0[i] = g_eve * tx_frame[i];
    if (predict_label(eve_model, y0) == Label::noise) {
        out.success = true;
        return out;
    }

    ComplexFrame dir;
    try {
        dir = fgm_direction(eve_model, y0, g_eve);
    } catch (const ZeroGradientError&) {
        return out;
    } catch (const DegenerateChannelError&) {
        return out;
    }

    const double energy_cap = frame_energy_budget(budget.p_max, m);
    double hi = std::sqrt(energy_cap);
    if (hi <= 0.0) return out;

    if (!detail::fools(eve_model, tx_frame, dir, hi, g_eve)) {
        out.delta = detail::scaled_neg(dir, hi);
        out.epsilon = hi;
        out.success = false;
        return out;
    }

    double lo = 0.0;
    while (hi - lo > budget.eps_acc) {
        const double mid = 0.5 * (lo + hi);
        if (detail::fools(eve_model, tx_frame, dir, mid, g_eve))
            hi = mid;
        else
            lo = mid;
    }

    out.delta = detail::scaled_neg(dir, hi);
    out.epsilon = hi;
    out.success = true;
    if (frame_energy(out.delta) > energy_cap * (1.0 + 1e-9))
        throw std::logic_error("craft: perturbation energy exceeds budget");
    return out;
}

/// Transmit-side superposition x + delta.
inline ComplexFrame apply_perturbation(const ComplexFrame& tx_frame, const CraftedPerturbation& crafted) {
    if (tx_frame.size() != crafted.delta.size())
        throw std::invalid_argument("apply_perturbation: length mismatch");
    ComplexFrame out(tx_frame.size());
    for (std::size_t i = 0; i < tx_frame.size(); ++i) out[i] = tx_frame[i] + crafted.delta[i];
    return out;
}

}  // namespace covris
