#pragma once

// Shared reduced-scale trained detectors for the adversarial/experiment
// tests. Training runs once per test binary invocation.

#include "covris/detector.hpp"
#include "covris/experiment.hpp"

namespace covris::testfx {

struct Fixture {
    Topology topo;  // defaults: theta_tr 45, theta_ri 30, theta_re 10
    std::vector<Complex> g_rx;
    std::vector<Complex> g_eve;
    DetectorModel rx;
    DetectorModel eve;
};

inline const Fixture& fx() {
    static const Fixture instance = [] {
        Fixture f;
        f.g_rx = codeword_gains(f.topo, Side::receiver);
        f.g_eve = codeword_gains(f.topo, Side::eavesdropper);
        DatasetSpec spec;
        spec.samples_per_cell = 120;
        TrainConfig tc;
        tc.epochs = 8;
        tc.seed = 1001;
        f.rx = train(generate_dataset(f.topo, spec, Side::receiver, 501), DetectorArch{}, tc).model;
        tc.seed = 1002;
        f.eve = train(generate_dataset(f.topo, spec, Side::eavesdropper, 502), DetectorArch{}, tc).model;
        return f;
    }();
    return instance;
}

}  // namespace covris::testfx
