#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "covris/detector.hpp"
#include "covris/errors.hpp"
#include "covris/experiment.hpp"
#include "covris/io.hpp"

namespace covris {

/// Everything one pipeline run needs, parsed from a flat dotted-key config
/// file. The CLI may override master_seed, n_trials, output_dir and the
/// paper-scale switch after parsing.
struct RunConfig {
    Topology topology;
    DatasetSpec dataset;
    DetectorArch arch;
    TrainConfig train;
    std::vector<double> sweep_powers_dbm{-std::numeric_limits<double>::infinity(),
                                         5.0, 10.0, 15.0, 20.0, 25.0};
    double selection_power_dbm = 25.0;
    int n_trials = 1000;
    double test_snr_db = 5.0;
    double eps_acc_rel = 1e-4;
    std::string output_dir = "out";
    std::uint64_t master_seed = 1;

    EvalParams eval_params() const { return EvalParams{dataset.signal_power, test_snr_db, eps_acc_rel}; }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw ConfigError("");
        return d;
    } catch (...) {
        throw ConfigError("config: key '" + key + "' has non-numeric value '" + v + "'");
    }
}

inline long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long n = std::stoll(v, &pos);
        if (pos != v.size()) throw ConfigError("");
        return n;
    } catch (...) {
        throw ConfigError("config: key '" + key + "' has non-integer value '" + v + "'");
    }
}

inline std::vector<double> parse_double_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw ConfigError("config: key '" + key + "' holds an empty list");
    return out;
}

}  // namespace detail

/// Parses `key = value` lines; '#' starts a comment; blank lines are
/// skipped. Duplicate or unknown keys are errors.
inline std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + " is not 'key = value'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config: line " + std::to_string(lineno) + " has empty key or value");
        if (!kv.emplace(key, value).second)
            throw ConfigError("config: duplicate key '" + key + "'");
    }
    return kv;
}

/// Canonical form: sorted `key=value` lines. The config hash embedded in
/// artifacts is the FNV-1a of this text, so formatting and comments do not
/// invalidate a run.
inline std::string canonical_config_text(const std::map<std::string, std::string>& kv) {
    std::string out;
    for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
    return out;
}

inline RunConfig config_from_kv(const std::map<std::string, std::string>& kv) {
    RunConfig cfg;
    for (const auto& [key, value] : kv) {
        if (key == "ris.n")
            cfg.topology.ris.n = static_cast<int>(detail::parse_int(key, value));
        else if (key == "ris.kappa")
            cfg.topology.ris.kappa = detail::parse_double(key, value);
        else if (key == "ris.d_phase")
            cfg.topology.ris.d_phase = detail::parse_double(key, value);
        else if (key == "angles.theta_tr_deg")
            cfg.topology.theta_tr_deg = detail::parse_double(key, value);
        else if (key == "angles.theta_ri_deg")
            cfg.topology.theta_ri_deg = detail::parse_double(key, value);
        else if (key == "angles.theta_re_deg")
            cfg.topology.theta_re_deg = detail::parse_double(key, value);
        else if (key == "pathloss.rho_tr")
            cfg.topology.rho_tr = detail::parse_double(key, value);
        else if (key == "pathloss.rho_ri")
            cfg.topology.rho_ri = detail::parse_double(key, value);
        else if (key == "pathloss.rho_re")
            cfg.topology.rho_re = detail::parse_double(key, value);
        else if (key == "frame.m")
            cfg.dataset.frame_m = static_cast<int>(detail::parse_int(key, value));
        else if (key == "dataset.samples_per_cell")
            cfg.dataset.samples_per_cell = static_cast<int>(detail::parse_int(key, value));
        else if (key == "dataset.snr_levels_db")
            cfg.dataset.snr_levels_db = detail::parse_double_list(key, value);
        else if (key == "dataset.signal_power_dbm")
            cfg.dataset.signal_power = PowerDbm{detail::parse_double(key, value)};
        else if (key == "detector.filters")
            cfg.arch.filters = static_cast<int>(detail::parse_int(key, value));
        else if (key == "detector.hidden")
            cfg.arch.hidden = static_cast<int>(detail::parse_int(key, value));
        else if (key == "detector.dropout")
            cfg.arch.dropout_rate = detail::parse_double(key, value);
        else if (key == "train.epochs")
            cfg.train.epochs = static_cast<int>(detail::parse_int(key, value));
        else if (key == "train.batch_size")
            cfg.train.batch_size = static_cast<int>(detail::parse_int(key, value));
        else if (key == "train.learning_rate")
            cfg.train.learning_rate = detail::parse_double(key, value);
        else if (key == "test.snr_db")
            cfg.test_snr_db = detail::parse_double(key, value);
        else if (key == "sweep.powers_dbm")
            cfg.sweep_powers_dbm = detail::parse_double_list(key, value);
        else if (key == "sweep.n_trials")
            cfg.n_trials = static_cast<int>(detail::parse_int(key, value));
        else if (key == "sweep.selection_power_dbm")
            cfg.selection_power_dbm = detail::parse_double(key, value);
        else if (key == "budget.eps_acc_rel")
            cfg.eps_acc_rel = detail::parse_double(key, value);
        else if (key == "output_dir")
            cfg.output_dir = value;
        else if (key == "master_seed")
            cfg.master_seed = static_cast<std::uint64_t>(detail::parse_int(key, value));
        else
            throw ConfigError("config: unknown key '" + key + "'");
    }

    try {
        validate_topology(cfg.topology);
        validate_dataset_spec(cfg.dataset);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (cfg.arch.m != cfg.dataset.frame_m) cfg.arch.m = cfg.dataset.frame_m;
    if (cfg.arch.filters < 1 || cfg.arch.hidden < 1)
        throw ConfigError("config: detector.filters and detector.hidden must be >= 1");
    if (cfg.arch.dropout_rate < 0.0 || cfg.arch.dropout_rate >= 1.0)
        throw ConfigError("config: detector.dropout must lie in [0, 1)");
    if (cfg.train.epochs < 1 || cfg.train.batch_size < 1 || cfg.train.learning_rate <= 0.0)
        throw ConfigError("config: bad train.* values");
    if (cfg.n_trials < 1) throw ConfigError("config: sweep.n_trials must be >= 1");
    if (cfg.eps_acc_rel <= 0.0) throw ConfigError("config: budget.eps_acc_rel must be > 0");
    if (cfg.sweep_powers_dbm.empty()) throw ConfigError("config: sweep.powers_dbm must be nonempty");
    return cfg;
}

struct LoadedConfig {
    RunConfig run;
    std::uint64_t config_hash = 0;
};

inline LoadedConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config: cannot read " + path);
    std::ostringstream os;
    os << is.rdbuf();
    const auto kv = parse_config_text(os.str());
    LoadedConfig out;
    out.run = config_from_kv(kv);
    out.config_hash = fnv1a64(canonical_config_text(kv));
    return out;
}

}  // namespace covris
