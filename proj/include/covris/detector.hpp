#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "covris/errors.hpp"
#include "covris/rng.hpp"
#include "covris/signals.hpp"

namespace covris {

enum class Label : int { signal = 0, noise = 1 };

inline const char* label_name(Label l) { return l == Label::signal ? "signal" : "noise"; }

/// One training example: [2 x M] real tensor (I row, then Q row) plus class.
struct LabeledExample {
    std::vector<double> input;
    Label label = Label::signal;
};

struct DetectorArch {
    int m = 16;
    int filters = 16;
    int hidden = 64;
    double dropout_rate = 0.1;

    int conv_out() const { return m - 2; }
    int flat_size() const { return filters * 2 * (m - 2); }
};

/// Two-class signal/noise convolutional detector.
///
/// Pipeline: conv(1x3, valid, F filters, shared across the I and Q rows)
/// -> ReLU -> flatten [f][row][col] -> dense(H) -> ReLU -> inverted dropout
/// (train mode only) -> dense(2) -> softmax [p_signal, p_noise].
struct DetectorModel {
    DetectorArch arch;
    std::vector<double> conv_w;  // [F][3]
    std::vector<double> conv_b;  // [F]
    std::vector<double> fc1_w;   // [H][F*2*(M-2)]
    std::vector<double> fc1_b;   // [H]
    std::vector<double> out_w;   // [2][H]
    std::vector<double> out_b;   // [2]
};

inline DetectorModel zero_model(DetectorArch arch) {
    DetectorModel mdl;
    mdl.arch = arch;
    mdl.conv_w.assign(static_cast<std::size_t>(arch.filters) * 3, 0.0);
    mdl.conv_b.assign(static_cast<std::size_t>(arch.filters), 0.0);
    mdl.fc1_w.assign(static_cast<std::size_t>(arch.hidden) * static_cast<std::size_t>(arch.flat_size()), 0.0);
    mdl.fc1_b.assign(static_cast<std::size_t>(arch.hidden), 0.0);
    mdl.out_w.assign(2 * static_cast<std::size_t>(arch.hidden), 0.0);
    mdl.out_b.assign(2, 0.0);
    return mdl;
}

/// He-uniform initialization scaled by fan-in; biases start at zero.
inline DetectorModel init_model(DetectorArch arch, Rng& rng) {
    DetectorModel mdl = zero_model(arch);
    auto fill = [&rng](std::vector<double>& w, int fan_in) {
        const double limit = std::sqrt(6.0 / static_cast<double>(fan_in));
        for (double& v : w) v = (2.0 * rng.uniform01() - 1.0) * limit;
    };
    fill(mdl.conv_w, 3);
    fill(mdl.fc1_w, arch.flat_size());
    fill(mdl.out_w, arch.hidden);
    return mdl;
}

inline DetectorModel init_model(DetectorArch arch, std::uint64_t seed) {
    Rng rng(seed);
    return init_model(arch, rng);
}

/// Inverted-dropout factor: 0 with probability rate, else 1/(1-rate), so
/// inference needs no rescaling.
inline double dropout_scale(double rate, Rng& rng) {
    return (rng.uniform01() < rate) ? 0.0 : 1.0 / (1.0 - rate);
}

/// Intermediate activations kept for backprop; reusable across calls to
/// avoid re-allocation in training and sweep loops.
struct ForwardTrace {
    std::vector<double> conv_pre, conv_act;  // [F*2*(M-2)]
    std::vector<double> hidden_pre;          // [H] before ReLU
    std::vector<double> hidden_act;          // [H] after ReLU and dropout
    std::vector<double> drop_scale;          // [H]
    std::array<double, 2> logits{};
    std::array<double, 2> probs{};

    void resize(const DetectorArch& arch) {
        conv_pre.resize(static_cast<std::size_t>(arch.flat_size()));
        conv_act.resize(conv_pre.size());
        hidden_pre.resize(static_cast<std::size_t>(arch.hidden));
        hidden_act.resize(hidden_pre.size());
        drop_scale.resize(hidden_pre.size());
    }
};

namespace detail {

inline void check_input_shape(const DetectorModel& mdl, std::span<const double> input) {
    const std::size_t want = 2 * static_cast<std::size_t>(mdl.arch.m);
    if (input.size() != want)
        throw std::invalid_argument("detector input must be 2 x M = " + std::to_string(want) +
                                    " values, got " + std::to_string(input.size()));
}

}  // namespace detail

/// Forward pass into a caller-owned trace. `rng` is consumed only when
/// train_mode is true (one draw per hidden unit).
inline std::array<double, 2> forward_trace(const DetectorModel& mdl, std::span<const double> input,
                                           bool train_mode, Rng* rng, ForwardTrace& tr) {
    detail::check_input_shape(mdl, input);
    const DetectorArch& a = mdl.arch;
    tr.resize(a);

    const int cw = a.conv_out();
    for (int f = 0; f < a.filters; ++f) {
        const double* w = &mdl.conv_w[static_cast<std::size_t>(f) * 3];
        const double b = mdl.conv_b[static_cast<std::size_t>(f)];
        for (int r = 0; r < 2; ++r) {
            const double* row = input.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(a.m);
            double* pre = &tr.conv_pre[(static_cast<std::size_t>(f) * 2 + static_cast<std::size_t>(r)) *
                                       static_cast<std::size_t>(cw)];
            double* act = &tr.conv_act[(static_cast<std::size_t>(f) * 2 + static_cast<std::size_t>(r)) *
                                       static_cast<std::size_t>(cw)];
            for (int c = 0; c < cw; ++c) {
                const double z = b + w[0] * row[c] + w[1] * row[c + 1] + w[2] * row[c + 2];
                pre[c] = z;
                act[c] = z > 0.0 ? z : 0.0;
            }
        }
    }

    const int flat = a.flat_size();
    for (int h = 0; h < a.hidden; ++h) {
        const double* w = &mdl.fc1_w[static_cast<std::size_t>(h) * static_cast<std::size_t>(flat)];
        double z = mdl.fc1_b[static_cast<std::size_t>(h)];
        for (int i = 0; i < flat; ++i) z += w[i] * tr.conv_act[static_cast<std::size_t>(i)];
        tr.hidden_pre[static_cast<std::size_t>(h)] = z;
        const double act = z > 0.0 ? z : 0.0;
        const double scale = train_mode ? dropout_scale(a.dropout_rate, *rng) : 1.0;
        tr.drop_scale[static_cast<std::size_t>(h)] = scale;
        tr.hidden_act[static_cast<std::size_t>(h)] = act * scale;
    }

    for (int k = 0; k < 2; ++k) {
        const double* w = &mdl.out_w[static_cast<std::size_t>(k) * static_cast<std::size_t>(a.hidden)];
        double z = mdl.out_b[static_cast<std::size_t>(k)];
        for (int h = 0; h < a.hidden; ++h) z += w[h] * tr.hidden_act[static_cast<std::size_t>(h)];
        tr.logits[static_cast<std::size_t>(k)] = z;
    }

    const double mx = std::max(tr.logits[0], tr.logits[1]);
    const double e0 = std::exp(tr.logits[0] - mx);
    const double e1 = std::exp(tr.logits[1] - mx);
    tr.probs = {e0 / (e0 + e1), e1 / (e0 + e1)};
    return tr.probs;
}

/// [p_signal, p_noise] for one [2 x M] input.
inline std::array<double, 2> forward(const DetectorModel& mdl, std::span<const double> input,
                                     bool train_mode = false, Rng* rng = nullptr) {
    ForwardTrace tr;
    return forward_trace(mdl, input, train_mode, rng, tr);
}

/// Cross-entropy toward `target`, -log p_target, clamped away from log(0).
inline double cross_entropy(const std::array<double, 2>& probs, Label target) {
    const double p = probs[static_cast<std::size_t>(target)];
    return -std::log(p > 1e-300 ? p : 1e-300);
}

inline std::vector<double> frame_to_iq(const ComplexFrame& frame) {
    std::vector<double> iq(2 * frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i) {
        iq[i] = frame[i].real();
        iq[frame.size() + i] = frame[i].imag();
    }
    return iq;
}

/// argmax class for a complex frame; exact ties resolve to 'signal'.
inline Label predict_label(const DetectorModel& mdl, const ComplexFrame& frame) {
    const auto probs = forward(mdl, frame_to_iq(frame));
    return probs[0] >= probs[1] ? Label::signal : Label::noise;
}

/// Gradient accumulator shaped like the model parameters.
struct ModelGrads {
    std::vector<double> conv_w, conv_b, fc1_w, fc1_b, out_w, out_b;

    void resize(const DetectorArch& a) {
        conv_w.resize(static_cast<std::size_t>(a.filters) * 3);
        conv_b.resize(static_cast<std::size_t>(a.filters));
        fc1_w.resize(static_cast<std::size_t>(a.hidden) * static_cast<std::size_t>(a.flat_size()));
        fc1_b.resize(static_cast<std::size_t>(a.hidden));
        out_w.resize(2 * static_cast<std::size_t>(a.hidden));
        out_b.resize(2);
    }
    void zero() {
        auto z = [](std::vector<double>& v) { std::fill(v.begin(), v.end(), 0.0); };
        z(conv_w), z(conv_b), z(fc1_w), z(fc1_b), z(out_w), z(out_b);
    }
};

/// Backprop of cross-entropy toward `target` through a completed trace.
/// Accumulates into `grads` when non-null; writes d(loss)/d(input) into
/// `input_grad` (length 2M) when non-null. The dropout scales recorded in the
/// trace are honored, so inference traces backprop without dropout.
inline void backward(const DetectorModel& mdl, std::span<const double> input, const ForwardTrace& tr,
                     Label target, ModelGrads* grads, double* input_grad) {
    const DetectorArch& a = mdl.arch;
    const int cw = a.conv_out();
    const int flat = a.flat_size();

    std::array<double, 2> dlogit = tr.probs;
    dlogit[static_cast<std::size_t>(target)] -= 1.0;

    thread_local std::vector<double> dhidden, dflat;
    dhidden.assign(static_cast<std::size_t>(a.hidden), 0.0);
    dflat.assign(static_cast<std::size_t>(flat), 0.0);

    for (int k = 0; k < 2; ++k) {
        const double dk = dlogit[static_cast<std::size_t>(k)];
        const double* w = &mdl.out_w[static_cast<std::size_t>(k) * static_cast<std::size_t>(a.hidden)];
        if (grads) {
            double* gw = &grads->out_w[static_cast<std::size_t>(k) * static_cast<std::size_t>(a.hidden)];
            for (int h = 0; h < a.hidden; ++h) gw[h] += dk * tr.hidden_act[static_cast<std::size_t>(h)];
            grads->out_b[static_cast<std::size_t>(k)] += dk;
        }
        for (int h = 0; h < a.hidden; ++h) dhidden[static_cast<std::size_t>(h)] += dk * w[h];
    }

    for (int h = 0; h < a.hidden; ++h) {
        double d = dhidden[static_cast<std::size_t>(h)] * tr.drop_scale[static_cast<std::size_t>(h)];
        if (tr.hidden_pre[static_cast<std::size_t>(h)] <= 0.0) d = 0.0;
        if (d == 0.0) continue;
        const double* w = &mdl.fc1_w[static_cast<std::size_t>(h) * static_cast<std::size_t>(flat)];
        if (grads) {
            double* gw = &grads->fc1_w[static_cast<std::size_t>(h) * static_cast<std::size_t>(flat)];
            for (int i = 0; i < flat; ++i) gw[i] += d * tr.conv_act[static_cast<std::size_t>(i)];
            grads->fc1_b[static_cast<std::size_t>(h)] += d;
        }
        for (int i = 0; i < flat; ++i) dflat[static_cast<std::size_t>(i)] += d * w[i];
    }

    if (input_grad) std::fill(input_grad, input_grad + 2 * static_cast<std::size_t>(a.m), 0.0);
    for (int f = 0; f < a.filters; ++f) {
        const double* w = &mdl.conv_w[static_cast<std::size_t>(f) * 3];
        for (int r = 0; r < 2; ++r) {
            const std::size_t base = (static_cast<std::size_t>(f) * 2 + static_cast<std::size_t>(r)) *
                                     static_cast<std::size_t>(cw);
            const double* row = input.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(a.m);
            double* girow = input_grad ? input_grad + static_cast<std::size_t>(r) * static_cast<std::size_t>(a.m)
                                       : nullptr;
            for (int c = 0; c < cw; ++c) {
                if (tr.conv_pre[base + static_cast<std::size_t>(c)] <= 0.0) continue;
                const double d = dflat[base + static_cast<std::size_t>(c)];
                if (d == 0.0) continue;
                if (grads) {
                    double* gw = &grads->conv_w[static_cast<std::size_t>(f) * 3];
                    gw[0] += d * row[c];
                    gw[1] += d * row[c + 1];
                    gw[2] += d * row[c + 2];
                    grads->conv_b[static_cast<std::size_t>(f)] += d;
                }
                if (girow) {
                    girow[c] += d * w[0];
                    girow[c + 1] += d * w[1];
                    girow[c + 2] += d * w[2];
                }
            }
        }
    }
}

/// d(cross-entropy toward target)/d(input), inference mode (no dropout).
inline std::vector<double> input_gradient(const DetectorModel& mdl, std::span<const double> input,
                                          Label target) {
    ForwardTrace tr;
    forward_trace(mdl, input, false, nullptr, tr);
    std::vector<double> grad(input.size());
    backward(mdl, input, tr, target, nullptr, grad.data());
    return grad;
}

/// Packages the [2 x M] input gradient as g_m = dL/dI_m + j dL/dQ_m, so that
/// Re<conj(g), delta> is the first-order loss change for a complex
/// perturbation delta.
inline ComplexFrame complex_input_gradient(const DetectorModel& mdl, const ComplexFrame& frame,
                                           Label target) {
    const std::vector<double> iq = frame_to_iq(frame);
    const std::vector<double> g = input_gradient(mdl, iq, target);
    ComplexFrame out(frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i) out[i] = Complex(g[i], g[frame.size() + i]);
    return out;
}

/// Cross-entropy of one input in inference mode; finite-difference oracle hook.
inline double input_loss(const DetectorModel& mdl, std::span<const double> input, Label target) {
    return cross_entropy(forward(mdl, input), target);
}

// ---------------------------------------------------------------------------
// Training
// ---------------------------------------------------------------------------

struct TrainConfig {
    int epochs = 20;
    int batch_size = 128;
    double learning_rate = 1e-3;
    std::uint64_t seed = 0;
};

struct EpochMetrics {
    int epoch = 0;  // 1-based
    double train_loss = 0.0;
    double train_acc = 0.0;
    double val_loss = 0.0;
    double val_acc = 0.0;
};

struct TrainResult {
    DetectorModel model;
    double initial_train_loss = 0.0;
    std::vector<EpochMetrics> epochs;

    double final_train_acc() const { return epochs.empty() ? 0.0 : epochs.back().train_acc; }
    double final_val_acc() const { return epochs.empty() ? 0.0 : epochs.back().val_acc; }
};

/// Shuffled example list with a recorded train/validation split: the first
/// `train_count` examples train, the rest validate.
struct SplitDataset {
    std::vector<LabeledExample> examples;
    std::size_t train_count = 0;

    std::span<const LabeledExample> train() const {
        return {examples.data(), train_count};
    }
    std::span<const LabeledExample> validation() const {
        return {examples.data() + train_count, examples.size() - train_count};
    }
};

namespace detail {

struct Adam {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    long step = 0;
    ModelGrads m, v;

    void init(const DetectorArch& a) {
        m.resize(a);
        v.resize(a);
        m.zero();
        v.zero();
    }

    void apply(std::vector<double>& w, const std::vector<double>& g, std::vector<double>& mw,
               std::vector<double>& vw, double c1, double c2) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            mw[i] = beta1 * mw[i] + (1.0 - beta1) * g[i];
            vw[i] = beta2 * vw[i] + (1.0 - beta2) * g[i] * g[i];
            w[i] -= lr * (mw[i] / c1) / (std::sqrt(vw[i] / c2) + eps);
        }
    }

    void update(DetectorModel& mdl, const ModelGrads& g) {
        ++step;
        const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step));
        const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step));
        apply(mdl.conv_w, g.conv_w, m.conv_w, v.conv_w, c1, c2);
        apply(mdl.conv_b, g.conv_b, m.conv_b, v.conv_b, c1, c2);
        apply(mdl.fc1_w, g.fc1_w, m.fc1_w, v.fc1_w, c1, c2);
        apply(mdl.fc1_b, g.fc1_b, m.fc1_b, v.fc1_b, c1, c2);
        apply(mdl.out_w, g.out_w, m.out_w, v.out_w, c1, c2);
        apply(mdl.out_b, g.out_b, m.out_b, v.out_b, c1, c2);
    }
};

inline std::pair<double, double> evaluate(const DetectorModel& mdl,
                                          std::span<const LabeledExample> set) {
    ForwardTrace tr;
    double loss = 0.0;
    std::size_t correct = 0;
    for (const LabeledExample& ex : set) {
        const auto probs = forward_trace(mdl, ex.input, false, nullptr, tr);
        loss += cross_entropy(probs, ex.label);
        const Label pred = probs[0] >= probs[1] ? Label::signal : Label::noise;
        correct += (pred == ex.label) ? 1 : 0;
    }
    const double n = static_cast<double>(set.size());
    return {set.empty() ? 0.0 : loss / n, set.empty() ? 0.0 : static_cast<double>(correct) / n};
}

}  // namespace detail

/// Mini-batch SGD with the Adam update rule on mean cross-entropy.
/// Deterministic given cfg.seed (init, shuffling and dropout all flow from
/// one stream). Throws InvalidDatasetError unless the training split holds
/// both classes.
inline TrainResult train(const SplitDataset& data, DetectorArch arch, const TrainConfig& cfg) {
    if (cfg.learning_rate <= 0.0) throw std::invalid_argument("train: learning_rate must be > 0");
    if (cfg.epochs < 1 || cfg.batch_size < 1) throw std::invalid_argument("train: bad epochs/batch_size");
    auto tr_set = data.train();
    bool has_signal = false, has_noise = false;
    for (const LabeledExample& ex : tr_set) (ex.label == Label::signal ? has_signal : has_noise) = true;
    if (!has_signal || !has_noise)
        throw InvalidDatasetError("train: training split must contain both classes");

    Rng rng(cfg.seed);
    TrainResult result;
    result.model = init_model(arch, rng);
    result.initial_train_loss = detail::evaluate(result.model, tr_set).first;

    detail::Adam adam;
    adam.lr = cfg.learning_rate;
    adam.init(arch);

    ModelGrads grads;
    grads.resize(arch);
    ForwardTrace trace;
    std::vector<std::size_t> order(tr_set.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        shuffle(order, rng);
        double loss_sum = 0.0;
        std::size_t correct = 0;
        for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(cfg.batch_size)) {
            const std::size_t stop = std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
            grads.zero();
            for (std::size_t i = start; i < stop; ++i) {
                const LabeledExample& ex = tr_set[order[i]];
                const auto probs = forward_trace(result.model, ex.input, true, &rng, trace);
                loss_sum += cross_entropy(probs, ex.label);
                const Label pred = probs[0] >= probs[1] ? Label::signal : Label::noise;
                correct += (pred == ex.label) ? 1 : 0;
                backward(result.model, ex.input, trace, ex.label, &grads, nullptr);
            }
            const double inv = 1.0 / static_cast<double>(stop - start);
            auto scale = [inv](std::vector<double>& v) {
                for (double& x : v) x *= inv;
            };
            scale(grads.conv_w), scale(grads.conv_b), scale(grads.fc1_w), scale(grads.fc1_b),
                scale(grads.out_w), scale(grads.out_b);
            adam.update(result.model, grads);
        }

        EpochMetrics em;
        em.epoch = epoch;
        em.train_loss = loss_sum / static_cast<double>(tr_set.size());
        em.train_acc = static_cast<double>(correct) / static_cast<double>(tr_set.size());
        const auto [vl, va] = detail::evaluate(result.model, data.validation());
        em.val_loss = vl;
        em.val_acc = va;
        result.epochs.push_back(em);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Persistence: magic, version, M, F, H, dropout_rate header, then each tensor
// as little-endian 32-bit floats in declaration order.
// ---------------------------------------------------------------------------

inline constexpr char kModelMagic[4] = {'C', 'V', 'D', 'M'};
inline constexpr std::uint32_t kModelVersion = 1;

namespace detail {

inline void write_f32(std::ostream& os, const std::vector<double>& v) {
    for (double d : v) {
        const float f = static_cast<float>(d);
        os.write(reinterpret_cast<const char*>(&f), sizeof(f));
    }
}

inline void read_f32(std::istream& is, std::vector<double>& v) {
    for (double& d : v) {
        float f = 0.0f;
        is.read(reinterpret_cast<char*>(&f), sizeof(f));
        d = static_cast<double>(f);
    }
}

template <typename T>
void write_pod(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
T read_pod(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

}  // namespace detail

inline void save_model(const std::string& path, const DetectorModel& mdl) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ArtifactError("save_model: cannot open " + path);
    os.write(kModelMagic, 4);
    detail::write_pod<std::uint32_t>(os, kModelVersion);
    detail::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(mdl.arch.m));
    detail::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(mdl.arch.filters));
    detail::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(mdl.arch.hidden));
    detail::write_pod<float>(os, static_cast<float>(mdl.arch.dropout_rate));
    detail::write_f32(os, mdl.conv_w);
    detail::write_f32(os, mdl.conv_b);
    detail::write_f32(os, mdl.fc1_w);
    detail::write_f32(os, mdl.fc1_b);
    detail::write_f32(os, mdl.out_w);
    detail::write_f32(os, mdl.out_b);
    if (!os) throw ArtifactError("save_model: write failed for " + path);
}

inline DetectorModel load_model(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ArtifactError("load_model: cannot open " + path);
    char magic[4] = {};
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kModelMagic, 4) != 0)
        throw ArtifactError("load_model: bad magic in " + path);
    const auto version = detail::read_pod<std::uint32_t>(is);
    if (version != kModelVersion)
        throw ArtifactError("load_model: unsupported version " + std::to_string(version) + " in " + path);
    DetectorArch arch;
    arch.m = static_cast<int>(detail::read_pod<std::uint32_t>(is));
    arch.filters = static_cast<int>(detail::read_pod<std::uint32_t>(is));
    arch.hidden = static_cast<int>(detail::read_pod<std::uint32_t>(is));
    arch.dropout_rate = static_cast<double>(detail::read_pod<float>(is));
    if (!is || arch.m < 3 || arch.filters < 1 || arch.hidden < 1 || arch.dropout_rate < 0.0 ||
        arch.dropout_rate >= 1.0)
        throw ArtifactError("load_model: corrupt header in " + path);
    DetectorModel mdl = zero_model(arch);
    detail::read_f32(is, mdl.conv_w);
    detail::read_f32(is, mdl.conv_b);
    detail::read_f32(is, mdl.fc1_w);
    detail::read_f32(is, mdl.fc1_b);
    detail::read_f32(is, mdl.out_w);
    detail::read_f32(is, mdl.out_b);
    if (!is) throw ArtifactError("load_model: truncated tensor data in " + path);
    return mdl;
}

}  // namespace covris
