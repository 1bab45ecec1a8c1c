#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "covris/adversarial.hpp"
#include "covris/channel.hpp"
#include "covris/detector.hpp"
#include "covris/errors.hpp"
#include "covris/rng.hpp"
#include "covris/signals.hpp"

namespace covris {

/// Node placement: incident angle transmitter->RIS and reflected angles
/// RIS->receiver / RIS->eavesdropper, plus per-link path loss.
struct Topology {
    double theta_tr_deg = 45.0;
    double theta_ri_deg = 30.0;
    double theta_re_deg = 10.0;
    RisConfig ris;
    double rho_tr = 1.0;
    double rho_ri = 1.0;
    double rho_re = 1.0;
};

inline void validate_topology(const Topology& t) {
    auto ok = [](double a) { return a > 0.0 && a < 180.0; };
    if (!ok(t.theta_tr_deg) || !ok(t.theta_ri_deg) || !ok(t.theta_re_deg))
        throw std::invalid_argument("topology: angles must lie in (0, 180) degrees");
    if (t.ris.n < 1) throw std::invalid_argument("topology: ris.n must be >= 1");
    if (!(t.ris.kappa > 0.0) || t.ris.kappa > 1.0)
        throw std::invalid_argument("topology: ris.kappa must lie in (0, 1]");
    if (t.rho_tr < 0.0 || t.rho_ri < 0.0 || t.rho_re < 0.0)
        throw std::invalid_argument("topology: path loss must be >= 0");
}

enum class Side { receiver, eavesdropper };

inline const char* side_name(Side s) { return s == Side::receiver ? "receiver" : "eavesdropper"; }

/// Effective end-to-end gain for every codeword of the DFT codebook.
inline std::vector<Complex> codeword_gains(const Topology& topo, Side side) {
    const ChannelVector h_tr = make_channel(topo.theta_tr_deg, topo.rho_tr, topo.ris.n, topo.ris.d_phase);
    const double theta_out = side == Side::receiver ? topo.theta_ri_deg : topo.theta_re_deg;
    const double rho_out = side == Side::receiver ? topo.rho_ri : topo.rho_re;
    const ChannelVector h_out = make_channel(theta_out, rho_out, topo.ris.n, topo.ris.d_phase);
    std::vector<Complex> gains;
    gains.reserve(static_cast<std::size_t>(topo.ris.n));
    for (const InteractionVector& psi : dft_codebook(topo.ris.n))
        gains.push_back(effective_gain(h_tr, psi, h_out, topo.ris.kappa));
    return gains;
}

/// Dataset recipe: per (codeword, SNR level) cell, `samples_per_cell` signal
/// frames with the cell's own exact noise calibration, plus an equal count of
/// pure-noise frames at that SNR level's codebook-average calibration (the
/// noise floor the side actually operates at, matching the test-time
/// calibration).
struct DatasetSpec {
    int samples_per_cell = 500;
    std::vector<double> snr_levels_db{3.0, 5.0, 7.0};
    PowerDbm signal_power{30.0};
    bool include_noise_class = true;
    int frame_m = 16;
};

inline void validate_dataset_spec(const DatasetSpec& spec) {
    if (spec.samples_per_cell < 1) throw std::invalid_argument("dataset: samples_per_cell must be >= 1");
    if (spec.snr_levels_db.empty()) throw std::invalid_argument("dataset: snr_levels_db must be nonempty");
    if (spec.frame_m < 3) throw std::invalid_argument("dataset: frame_m must be >= 3");
}

/// Labeled received-signal / pure-noise examples for one side, shuffled, with
/// a half/half train/validation split recorded in the result.
inline SplitDataset generate_dataset(const Topology& topo, const DatasetSpec& spec, Side side,
                                     std::uint64_t seed) {
    validate_topology(topo);
    validate_dataset_spec(spec);
    const std::vector<Complex> gains = codeword_gains(topo, side);
    const double p_watts = dbm_to_watts(spec.signal_power);
    const std::size_t m = static_cast<std::size_t>(spec.frame_m);

    double mean_g2 = 0.0;
    for (const Complex& g : gains) mean_g2 += std::norm(g);
    mean_g2 /= static_cast<double>(gains.size());

    Rng rng(seed);
    SplitDataset data;
    data.examples.reserve(gains.size() * spec.snr_levels_db.size() *
                          static_cast<std::size_t>(spec.samples_per_cell) *
                          (spec.include_noise_class ? 2 : 1));
    for (const Complex& g : gains) {
        for (double snr_db : spec.snr_levels_db) {
            const double snr_lin = std::pow(10.0, snr_db / 10.0);
            const double sigma2_cell = std::norm(g) * p_watts / snr_lin;
            const double sigma2_floor = mean_g2 * p_watts / snr_lin;
            for (int s = 0; s < spec.samples_per_cell; ++s) {
                ComplexFrame x = scale_to_power(qpsk_frame(m, rng), spec.signal_power);
                ComplexFrame y(m);
                for (std::size_t i = 0; i < m; ++i)
                    y[i] = g * x[i] + complex_gaussian(sigma2_cell, rng);
                data.examples.push_back({frame_to_iq(y), Label::signal});
            }
            if (spec.include_noise_class) {
                for (int s = 0; s < spec.samples_per_cell; ++s)
                    data.examples.push_back(
                        {frame_to_iq(noise_frame(m, sigma2_floor, rng)), Label::noise});
            }
        }
    }
    shuffle(data.examples, rng);
    data.train_count = data.examples.size() / 2;
    return data;
}

/// Test-time evaluation knobs shared by the sweep/selection/correlation ops.
struct EvalParams {
    PowerDbm signal_power{30.0};
    double test_snr_db = 5.0;
    double eps_acc_rel = 1e-4;
};

inline bool power_is_off(PowerDbm p) { return !(dbm_to_watts(p) > 0.0); }

/// Fraction of n_trials signal-present frames the side's detector labels
/// 'signal'. When perturb_power is set, each frame carries a perturbation
/// crafted against the eavesdropper's model through the eavesdropper's
/// effective gain. Deterministic given the seed; crafting consumes no
/// randomness, so a zero perturbation reproduces the perturbation-free path
/// exactly.
inline double detection_probability(const DetectorModel& model, const Topology& topo, Side side,
                                    int ris_index, std::optional<PowerDbm> perturb_power,
                                    const DetectorModel* eve_model, const EvalParams& ep,
                                    int n_trials, std::uint64_t seed) {
    validate_topology(topo);
    if (n_trials < 1) throw std::invalid_argument("detection_probability: n_trials must be >= 1");
    if (ris_index < 0 || ris_index >= topo.ris.n)
        throw std::invalid_argument("detection_probability: ris_index out of range");
    if (perturb_power && power_is_off(*perturb_power)) perturb_power.reset();
    if (perturb_power && eve_model == nullptr)
        throw std::invalid_argument("detection_probability: perturbation requires the eavesdropper model");

    const std::vector<Complex> gains = codeword_gains(topo, side);
    const NoiseModel noise = calibrate_noise(gains, ep.signal_power, ep.test_snr_db);
    const Complex g_side = gains[static_cast<std::size_t>(ris_index)];
    Complex g_eve(0.0, 0.0);
    if (perturb_power) {
        g_eve = side == Side::eavesdropper
                    ? g_side
                    : codeword_gains(topo, Side::eavesdropper)[static_cast<std::size_t>(ris_index)];
    }
    const std::size_t m = static_cast<std::size_t>(model.arch.m);
    const PerturbationBudget budget =
        perturb_power ? make_budget(*perturb_power, m, ep.eps_acc_rel) : PerturbationBudget{};

    Rng rng(seed);
    ForwardTrace trace;
    int hits = 0;
    for (int t = 0; t < n_trials; ++t) {
        ComplexFrame x = scale_to_power(qpsk_frame(m, rng), ep.signal_power);
        if (perturb_power) {
            const CraftedPerturbation crafted = craft(*eve_model, x, g_eve, budget);
            for (std::size_t i = 0; i < m; ++i) x[i] += crafted.delta[i];
        }
        ComplexFrame y(m);
        for (std::size_t i = 0; i < m; ++i) y[i] = g_side * x[i] + complex_gaussian(noise.variance, rng);
        const auto probs = forward_trace(model, frame_to_iq(y), false, nullptr, trace);
        hits += (probs[0] >= probs[1]) ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(n_trials);
}

/// One grid cell of a detection report. perturb_dbm = -inf marks the
/// perturbation-free baseline.
struct ReportRow {
    int ris_index = 0;
    double perturb_dbm = 0.0;
    double p_det_rx = 0.0;
    double p_det_eve = 0.0;
    double snr_rx_db = 0.0;
    double snr_eve_db = 0.0;
};

struct DetectionReport {
    std::vector<ReportRow> rows;
    int n_trials = 0;
    std::uint64_t seed = 0;
    int selected_ris = -1;
    double selection_perturb_dbm = 0.0;
    double selection_objective = 0.0;
};

/// argmax of (p_rx - p_eve) over the rows; ties prefer higher p_rx, then the
/// lower codeword index. Returns an index into `rows`.
inline std::size_t select_from_rows(std::span<const ReportRow> rows) {
    if (rows.empty()) throw std::invalid_argument("select_from_rows: empty table");
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double obj_i = rows[i].p_det_rx - rows[i].p_det_eve;
        const double obj_b = rows[best].p_det_rx - rows[best].p_det_eve;
        if (obj_i > obj_b ||
            (obj_i == obj_b && (rows[i].p_det_rx > rows[best].p_det_rx ||
                                (rows[i].p_det_rx == rows[best].p_det_rx &&
                                 rows[i].ris_index < rows[best].ris_index))))
            best = i;
    }
    return best;
}

namespace detail {

inline double to_db_or_neg_inf(double linear) {
    return linear > 0.0 ? 10.0 * std::log10(linear) : -std::numeric_limits<double>::infinity();
}

}  // namespace detail

/// Full (K x |powers|) detection grid for both sides plus the Eq.-(8)-style
/// selection evaluated at `selection_dbm` (default: the largest power in the
/// list). Each grid cell owns a stream derived from (master seed, ris_index,
/// power index, side), so execution order cannot change the result.
inline DetectionReport sweep(const DetectorModel& rx_model, const DetectorModel& eve_model,
                             const Topology& topo, std::span<const PowerDbm> powers,
                             const EvalParams& ep, int n_trials, std::uint64_t master_seed,
                             std::optional<double> selection_dbm = std::nullopt) {
    if (powers.empty()) throw std::invalid_argument("sweep: powers must be nonempty");
    validate_topology(topo);

    const std::vector<Complex> g_rx = codeword_gains(topo, Side::receiver);
    const std::vector<Complex> g_ev = codeword_gains(topo, Side::eavesdropper);
    const double p_watts = dbm_to_watts(ep.signal_power);
    const double s2_rx = calibrate_noise(g_rx, ep.signal_power, ep.test_snr_db).variance;
    const double s2_ev = calibrate_noise(g_ev, ep.signal_power, ep.test_snr_db).variance;

    DetectionReport report;
    report.n_trials = n_trials;
    report.seed = master_seed;
    for (int ris = 0; ris < topo.ris.n; ++ris) {
        for (std::size_t pi = 0; pi < powers.size(); ++pi) {
            const PowerDbm p = powers[pi];
            const std::optional<PowerDbm> perturb =
                power_is_off(p) ? std::nullopt : std::optional<PowerDbm>(p);
            ReportRow row;
            row.ris_index = ris;
            row.perturb_dbm = power_is_off(p) ? -std::numeric_limits<double>::infinity() : p.dbm;
            row.p_det_rx = detection_probability(
                rx_model, topo, Side::receiver, ris, perturb, &eve_model, ep, n_trials,
                derive_seed(master_seed, {static_cast<std::uint64_t>(ris), pi, 0}));
            row.p_det_eve = detection_probability(
                eve_model, topo, Side::eavesdropper, ris, perturb, &eve_model, ep, n_trials,
                derive_seed(master_seed, {static_cast<std::uint64_t>(ris), pi, 1}));
            row.snr_rx_db =
                detail::to_db_or_neg_inf(std::norm(g_rx[static_cast<std::size_t>(ris)]) * p_watts / s2_rx);
            row.snr_eve_db =
                detail::to_db_or_neg_inf(std::norm(g_ev[static_cast<std::size_t>(ris)]) * p_watts / s2_ev);
            report.rows.push_back(row);
        }
    }

    double sel_dbm = selection_dbm.value_or(-std::numeric_limits<double>::infinity());
    if (!selection_dbm) {
        for (const PowerDbm& p : powers) sel_dbm = std::max(sel_dbm, p.dbm);
    }
    std::vector<ReportRow> at_power;
    for (const ReportRow& r : report.rows)
        if (r.perturb_dbm == sel_dbm) at_power.push_back(r);
    if (at_power.empty())
        throw std::invalid_argument("sweep: selection power not present in the power list");
    const std::size_t best = select_from_rows(at_power);
    report.selected_ris = at_power[best].ris_index;
    report.selection_perturb_dbm = sel_dbm;
    report.selection_objective = at_power[best].p_det_rx - at_power[best].p_det_eve;
    return report;
}

/// Selection at a single perturbation power; thin wrapper over sweep.
inline std::pair<int, DetectionReport> select_ris(const DetectorModel& rx_model,
                                                  const DetectorModel& eve_model, const Topology& topo,
                                                  PowerDbm perturb_power, const EvalParams& ep,
                                                  int n_trials, std::uint64_t master_seed) {
    const PowerDbm powers[] = {perturb_power};
    DetectionReport report = sweep(rx_model, eve_model, topo, powers, ep, n_trials, master_seed,
                                   power_is_off(perturb_power)
                                       ? -std::numeric_limits<double>::infinity()
                                       : perturb_power.dbm);
    return {report.selected_ris, std::move(report)};
}

/// Sample Pearson correlation coefficient.
inline double pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("pearson: length mismatch");
    if (xs.size() < 2) throw std::invalid_argument("pearson: need at least two points");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw UndefinedCorrelationError("pearson: zero variance column");
    return sxy / std::sqrt(sxx * syy);
}

struct CorrelationRow {
    int ris_index = 0;
    double snr_rx_linear = 0.0;
    double snr_rx_db = 0.0;  // floored far below any physical value, so Pearson stays finite
    double p_det_rx = 0.0;
    double p_det_eve = 0.0;
};

struct CorrelationResult {
    double corr_rx = 0.0;
    double corr_eve = 0.0;
    std::vector<CorrelationRow> table;
    int n_trials = 0;
    std::uint64_t seed = 0;
};

/// Pearson(analytic receiver SNR, measured detection) for both sides with no
/// perturbation. The SNR |g|^2 P / sigma^2 enters the correlation on the dB
/// scale; detection saturates, so correlating against the linear value would
/// let the one or two strongest codewords dominate the statistic.
inline CorrelationResult correlation_study(const DetectorModel& rx_model, const DetectorModel& eve_model,
                                           const Topology& topo, const EvalParams& ep, int n_trials,
                                           std::uint64_t master_seed) {
    validate_topology(topo);
    const std::vector<Complex> g_rx = codeword_gains(topo, Side::receiver);
    const double s2_rx = calibrate_noise(g_rx, ep.signal_power, ep.test_snr_db).variance;
    const double p_watts = dbm_to_watts(ep.signal_power);

    CorrelationResult result;
    result.n_trials = n_trials;
    result.seed = master_seed;
    std::vector<double> snr, prx, pev;
    for (int ris = 0; ris < topo.ris.n; ++ris) {
        CorrelationRow row;
        row.ris_index = ris;
        row.snr_rx_linear = std::norm(g_rx[static_cast<std::size_t>(ris)]) * p_watts / s2_rx;
        row.snr_rx_db = 10.0 * std::log10(std::max(row.snr_rx_linear, 1e-30));
        row.p_det_rx = detection_probability(
            rx_model, topo, Side::receiver, ris, std::nullopt, nullptr, ep, n_trials,
            derive_seed(master_seed, {static_cast<std::uint64_t>(ris), 0, 0}));
        row.p_det_eve = detection_probability(
            eve_model, topo, Side::eavesdropper, ris, std::nullopt, nullptr, ep, n_trials,
            derive_seed(master_seed, {static_cast<std::uint64_t>(ris), 0, 1}));
        result.table.push_back(row);
        snr.push_back(row.snr_rx_db);
        prx.push_back(row.p_det_rx);
        pev.push_back(row.p_det_eve);
    }
    result.corr_rx = pearson(snr, prx);
    result.corr_eve = pearson(snr, pev);
    return result;
}

}  // namespace covris
