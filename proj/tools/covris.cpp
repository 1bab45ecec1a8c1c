// covris command-line front end: dataset generation, detector training,
// detection sweeps, RIS selection and correlation studies, all driven by one
// flat config file. Exit codes: 0 success, 2 config error, 3 missing or
// corrupt artifact, 4 numerical failure.

#include <fcntl.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "covris/adversarial.hpp"
#include "covris/channel.hpp"
#include "covris/config.hpp"
#include "covris/detector.hpp"
#include "covris/experiment.hpp"
#include "covris/io.hpp"
#include "covris/signals.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace covris;

namespace {

constexpr std::uint64_t kTagDataset = 101;
constexpr std::uint64_t kTagTrain = 102;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitArtifact = 3;
constexpr int kExitNumerical = 4;

struct OutputLock {
    std::string path;
    bool held = false;

    explicit OutputLock(const fs::path& dir) {
        path = (dir / ".covris.lock").string();
        const int fd = ::open(path.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
        if (fd < 0)
            throw ConfigError("output dir is locked by another covris invocation (" + path +
                              "); remove the lock file if no other run is active");
        const std::string pid = std::to_string(::getpid()) + "\n";
        [[maybe_unused]] auto n = ::write(fd, pid.data(), pid.size());
        ::close(fd);
        held = true;
    }
    ~OutputLock() {
        if (held) ::unlink(path.c_str());
    }
    OutputLock(const OutputLock&) = delete;
    OutputLock& operator=(const OutputLock&) = delete;
};

struct CliOptions {
    std::string config_path = "covris.cfg";
    std::optional<std::uint64_t> seed_override;
    std::optional<int> trials_override;
    std::optional<std::string> out_override;
    bool paper_scale = false;
};

struct Run {
    RunConfig cfg;
    std::uint64_t config_hash = 0;
    fs::path out;
};

Run prepare(const CliOptions& opt) {
    LoadedConfig loaded = load_config(opt.config_path);
    Run run;
    run.cfg = loaded.run;
    run.config_hash = loaded.config_hash;
    if (opt.seed_override) run.cfg.master_seed = *opt.seed_override;
    if (opt.trials_override) {
        if (*opt.trials_override < 1) throw ConfigError("--trials must be >= 1");
        run.cfg.n_trials = *opt.trials_override;
    }
    if (opt.out_override) run.cfg.output_dir = *opt.out_override;
    if (opt.paper_scale) run.cfg.dataset.samples_per_cell = 5000;
    run.out = fs::path(run.cfg.output_dir);
    std::error_code ec;
    fs::create_directories(run.out, ec);
    if (ec || !fs::is_directory(run.out))
        throw ConfigError("cannot create output dir " + run.out.string());
    return run;
}

json manifest_base(const Run& run, const std::string& command) {
    json m;
    m["command"] = command;
    m["config_hash"] = hash_hex(run.config_hash);
    m["master_seed"] = run.cfg.master_seed;
    return m;
}

void add_artifact(json& manifest, const Run& run, const std::string& name) {
    manifest["artifacts"][name] = hash_hex(file_hash((run.out / name).string()));
}

void write_manifest(const Run& run, const std::string& name, const json& manifest) {
    write_text_file((run.out / name).string(), manifest.dump(2) + "\n");
}

std::size_t count_label(const SplitDataset& data, Label label) {
    std::size_t n = 0;
    for (const auto& ex : data.examples) n += (ex.label == label) ? 1 : 0;
    return n;
}

int cmd_gen_data(const Run& run) {
    json manifest = manifest_base(run, "gen-data");
    manifest["samples_per_cell"] = run.cfg.dataset.samples_per_cell;
    for (Side side : {Side::receiver, Side::eavesdropper}) {
        const std::uint64_t seed = derive_seed(
            run.cfg.master_seed, {kTagDataset, side == Side::receiver ? 0ull : 1ull});
        SplitDataset data = generate_dataset(run.cfg.topology, run.cfg.dataset, side, seed);
        const std::string name = side == Side::receiver ? "dataset_rx.bin" : "dataset_eve.bin";
        write_dataset((run.out / name).string(), data, run.cfg.dataset.frame_m, run.config_hash,
                      run.cfg.master_seed);
        json counts;
        counts["examples"] = data.examples.size();
        counts["train_count"] = data.train_count;
        counts["signal"] = count_label(data, Label::signal);
        counts["noise"] = count_label(data, Label::noise);
        counts["seed"] = seed;
        manifest[side == Side::receiver ? "receiver" : "eavesdropper"] = counts;
        add_artifact(manifest, run, name);
        std::cout << side_name(side) << " dataset: " << data.examples.size() << " examples ("
                  << counts["signal"] << " signal / " << counts["noise"] << " noise), train split "
                  << data.train_count << "\n";
    }
    write_manifest(run, "gen_data.manifest.json", manifest);
    return kExitOk;
}

int cmd_train(const Run& run, const std::string& side_arg) {
    std::vector<Side> sides;
    if (side_arg == "rx")
        sides = {Side::receiver};
    else if (side_arg == "eve")
        sides = {Side::eavesdropper};
    else
        sides = {Side::receiver, Side::eavesdropper};

    for (Side side : sides) {
        const bool rx = side == Side::receiver;
        const std::string ds_name = rx ? "dataset_rx.bin" : "dataset_eve.bin";
        DatasetHeader hdr;
        SplitDataset data = read_dataset((run.out / ds_name).string(), &hdr);
        if (static_cast<int>(hdr.m) != run.cfg.dataset.frame_m)
            throw ArtifactError("dataset " + ds_name + " was generated with frame.m=" +
                                std::to_string(hdr.m) + ", config says " +
                                std::to_string(run.cfg.dataset.frame_m));

        TrainConfig tc = run.cfg.train;
        tc.seed = derive_seed(run.cfg.master_seed, {kTagTrain, rx ? 0ull : 1ull});
        const TrainResult result = train(data, run.cfg.arch, tc);

        const std::string model_name = rx ? "model_rx.bin" : "model_eve.bin";
        const std::string metrics_name = rx ? "train_metrics_rx.csv" : "train_metrics_eve.csv";
        save_model((run.out / model_name).string(), result.model);
        write_text_file((run.out / metrics_name).string(),
                        metrics_to_csv(result, run.config_hash, run.cfg.master_seed));

        json manifest = manifest_base(run, "train");
        manifest["side"] = side_name(side);
        manifest["train_seed"] = tc.seed;
        manifest["epochs"] = result.epochs.size();
        manifest["initial_train_loss"] = result.initial_train_loss;
        manifest["final_train_acc"] = result.final_train_acc();
        manifest["final_val_acc"] = result.final_val_acc();
        add_artifact(manifest, run, model_name);
        add_artifact(manifest, run, metrics_name);
        write_manifest(run, rx ? "train_rx.manifest.json" : "train_eve.manifest.json", manifest);
        std::cout << side_name(side) << ": val acc " << fmt_double(result.final_val_acc(), 4)
                  << " after " << result.epochs.size() << " epochs\n";
    }
    return kExitOk;
}

std::pair<DetectorModel, DetectorModel> load_models(const Run& run) {
    DetectorModel rx = load_model((run.out / "model_rx.bin").string());
    DetectorModel eve = load_model((run.out / "model_eve.bin").string());
    return {std::move(rx), std::move(eve)};
}

json objective_table(const DetectionReport& report) {
    json rows = json::array();
    for (const ReportRow& r : report.rows) {
        if (r.perturb_dbm != report.selection_perturb_dbm) continue;
        json row;
        row["ris_index"] = r.ris_index;
        row["p_det_rx"] = r.p_det_rx;
        row["p_det_eve"] = r.p_det_eve;
        row["objective"] = r.p_det_rx - r.p_det_eve;
        rows.push_back(row);
    }
    return rows;
}

int cmd_sweep(const Run& run) {
    auto [rx_model, eve_model] = load_models(run);
    std::vector<PowerDbm> powers;
    for (double p : run.cfg.sweep_powers_dbm) powers.push_back(PowerDbm{p});
    const DetectionReport report =
        sweep(rx_model, eve_model, run.cfg.topology, powers, run.cfg.eval_params(), run.cfg.n_trials,
              run.cfg.master_seed, run.cfg.selection_power_dbm);

    write_text_file((run.out / "sweep_report.csv").string(), report_to_csv(report, run.config_hash));
    fs::create_directories(run.out / "plot");
    json manifest = manifest_base(run, "sweep");
    for (int ris = 0; ris < run.cfg.topology.ris.n; ++ris) {
        char name[32];
        std::snprintf(name, sizeof(name), "plot/ris_%02d.csv", ris);
        write_text_file((run.out / name).string(), plot_series_csv(report, ris, run.config_hash));
        add_artifact(manifest, run, name);
    }

    json summary;
    summary["config_hash"] = hash_hex(run.config_hash);
    summary["master_seed"] = run.cfg.master_seed;
    summary["n_trials"] = report.n_trials;
    summary["selected_ris"] = report.selected_ris;
    summary["selection_perturb_dbm"] = report.selection_perturb_dbm;
    summary["selection_objective"] = report.selection_objective;
    summary["objective_at_selection_power"] = objective_table(report);
    write_text_file((run.out / "sweep_summary.json").string(), summary.dump(2) + "\n");

    add_artifact(manifest, run, "sweep_report.csv");
    add_artifact(manifest, run, "sweep_summary.json");
    manifest["selected_ris"] = report.selected_ris;
    write_manifest(run, "sweep.manifest.json", manifest);
    std::cout << "selected ris " << report.selected_ris << " (objective "
              << fmt_double(report.selection_objective, 4) << " at "
              << fmt_double(report.selection_perturb_dbm, 1) << " dBm), report rows "
              << report.rows.size() << "\n";
    return kExitOk;
}

int cmd_select_ris(const Run& run) {
    auto [rx_model, eve_model] = load_models(run);
    const auto [selected, report] =
        select_ris(rx_model, eve_model, run.cfg.topology, PowerDbm{run.cfg.selection_power_dbm},
                   run.cfg.eval_params(), run.cfg.n_trials, run.cfg.master_seed);

    write_text_file((run.out / "select_ris_report.csv").string(),
                    report_to_csv(report, run.config_hash));
    json summary;
    summary["config_hash"] = hash_hex(run.config_hash);
    summary["master_seed"] = run.cfg.master_seed;
    summary["n_trials"] = report.n_trials;
    summary["selected_ris"] = selected;
    summary["selection_perturb_dbm"] = report.selection_perturb_dbm;
    summary["selection_objective"] = report.selection_objective;
    summary["objective_at_selection_power"] = objective_table(report);
    write_text_file((run.out / "select_ris_summary.json").string(), summary.dump(2) + "\n");

    json manifest = manifest_base(run, "select-ris");
    manifest["selected_ris"] = selected;
    add_artifact(manifest, run, "select_ris_report.csv");
    add_artifact(manifest, run, "select_ris_summary.json");
    write_manifest(run, "select_ris.manifest.json", manifest);
    std::cout << "selected ris " << selected << " (objective "
              << fmt_double(report.selection_objective, 4) << ")\n";
    return kExitOk;
}

int cmd_correlate(const Run& run) {
    auto [rx_model, eve_model] = load_models(run);
    const CorrelationResult result =
        correlation_study(rx_model, eve_model, run.cfg.topology, run.cfg.eval_params(),
                          run.cfg.n_trials, run.cfg.master_seed);

    write_text_file((run.out / "correlation_table.csv").string(),
                    correlation_to_csv(result, run.config_hash));
    json summary;
    summary["config_hash"] = hash_hex(run.config_hash);
    summary["master_seed"] = run.cfg.master_seed;
    summary["n_trials"] = result.n_trials;
    summary["corr_rx"] = result.corr_rx;
    summary["corr_eve"] = result.corr_eve;
    write_text_file((run.out / "correlation_summary.json").string(), summary.dump(2) + "\n");

    json manifest = manifest_base(run, "correlate");
    add_artifact(manifest, run, "correlation_table.csv");
    add_artifact(manifest, run, "correlation_summary.json");
    write_manifest(run, "correlate.manifest.json", manifest);
    std::cout << "corr_rx " << fmt_double(result.corr_rx, 4) << ", corr_eve "
              << fmt_double(result.corr_eve, 4) << "\n";
    return kExitOk;
}

int cmd_verify(const Run& run) {
    std::vector<fs::path> manifests;
    if (fs::is_directory(run.out))
        for (const auto& entry : fs::directory_iterator(run.out))
            if (entry.is_regular_file() && entry.path().string().ends_with(".manifest.json"))
                manifests.push_back(entry.path());
    std::sort(manifests.begin(), manifests.end());
    if (manifests.empty()) throw ArtifactError("verify: no manifests found in " + run.out.string());

    const std::string want_hash = hash_hex(run.config_hash);
    int checked = 0;
    bool ok = true;
    for (const fs::path& mp : manifests) {
        json m;
        try {
            m = json::parse(read_file_bytes(mp.string()));
        } catch (const json::exception& e) {
            throw ArtifactError("verify: cannot parse " + mp.string() + ": " + e.what());
        }
        const std::string cmd = m.value("command", "?");
        if (m.value("config_hash", "") != want_hash) {
            std::cout << "MISMATCH " << mp.filename().string() << ": config_hash "
                      << m.value("config_hash", "?") << " != " << want_hash << "\n";
            ok = false;
        }
        if (m.value("master_seed", std::uint64_t{0}) != run.cfg.master_seed) {
            std::cout << "MISMATCH " << mp.filename().string() << ": master_seed "
                      << m.value("master_seed", std::uint64_t{0}) << " != " << run.cfg.master_seed
                      << "\n";
            ok = false;
        }
        const json artifacts = m.value("artifacts", json::object());
        for (const auto& [name, hash] : artifacts.items()) {
            const fs::path fp = run.out / name;
            if (!fs::exists(fp)) {
                std::cout << "MISSING " << name << " (listed by " << mp.filename().string() << ")\n";
                ok = false;
                continue;
            }
            const std::string have = hash_hex(file_hash(fp.string()));
            if (have != hash.get<std::string>()) {
                std::cout << "MISMATCH " << name << ": content hash " << have << " != recorded "
                          << hash.get<std::string>() << "\n";
                ok = false;
            }
            ++checked;
        }
        std::cout << "manifest " << mp.filename().string() << " (" << cmd << "): checked\n";
    }
    if (!ok) throw ArtifactError("verify: artifact set is inconsistent with the config");
    std::cout << "verified " << manifests.size() << " manifests, " << checked << " artifacts\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"covris: link-level simulator for covert RIS-aided communication"};
    app.require_subcommand(1);

    CliOptions opt;
    app.add_option("--config", opt.config_path, "Run configuration file")->capture_default_str();
    std::uint64_t seed_val = 0;
    auto* seed_opt = app.add_option("--seed", seed_val, "Override master_seed");
    int trials_val = 0;
    auto* trials_opt = app.add_option("--trials", trials_val, "Override sweep.n_trials");
    std::string out_val;
    auto* out_opt = app.add_option("--out", out_val, "Override output_dir");
    app.add_flag("--paper-scale", opt.paper_scale,
                 "Use the full-scale dataset recipe (5000 samples per cell)");

    auto* gen = app.add_subcommand("gen-data", "Generate the labeled receiver/eavesdropper datasets");
    std::string side_arg = "both";
    auto* train_cmd = app.add_subcommand("train", "Train a detector from the generated dataset");
    train_cmd->add_option("--side", side_arg, "rx, eve or both")
        ->check(CLI::IsMember({"rx", "eve", "both"}))
        ->capture_default_str();
    auto* sweep_cmd =
        app.add_subcommand("sweep", "Detection-probability grid over codewords and powers");
    auto* select_cmd = app.add_subcommand("select-ris", "Codeword selection at one power");
    auto* corr_cmd = app.add_subcommand("correlate", "SNR/detection Pearson correlation study");
    auto* verify_cmd = app.add_subcommand("verify", "Check artifact hashes against the config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }
    if (seed_opt->count()) opt.seed_override = seed_val;
    if (trials_opt->count()) opt.trials_override = trials_val;
    if (out_opt->count()) opt.out_override = out_val;

    try {
        const Run run = prepare(opt);
        const OutputLock lock(run.out);
        if (gen->parsed()) return cmd_gen_data(run);
        if (train_cmd->parsed()) return cmd_train(run, side_arg);
        if (sweep_cmd->parsed()) return cmd_sweep(run);
        if (select_cmd->parsed()) return cmd_select_ris(run);
        if (corr_cmd->parsed()) return cmd_correlate(run);
        if (verify_cmd->parsed()) return cmd_verify(run);
        std::cerr << "no subcommand\n";
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ArtifactError& e) {
        std::cerr << "artifact error: " << e.what() << "\n";
        return kExitArtifact;
    } catch (const UndefinedCorrelationError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}
