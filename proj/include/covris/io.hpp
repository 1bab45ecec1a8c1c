#pragma once

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "covris/detector.hpp"
#include "covris/errors.hpp"
#include "covris/experiment.hpp"

namespace covris {

inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return std::string(buf);
}

inline std::string read_file_bytes(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ArtifactError("cannot open " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

inline std::uint64_t file_hash(const std::string& path) { return fnv1a64(read_file_bytes(path)); }

/// Fixed-precision formatting so reruns are byte-identical. Infinities print
/// as inf/-inf, which strtod round-trips.
inline std::string fmt_double(double v, int precision = 6) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return std::string(buf);
}

/// `# key=value ...` comment line embedded at the top of CSV artifacts.
inline std::string artifact_comment(std::uint64_t config_hash, std::uint64_t master_seed) {
    return "# config_hash=" + hash_hex(config_hash) + " master_seed=" + std::to_string(master_seed);
}

// ---------------------------------------------------------------------------
// Dataset file: header, then n * 2M little-endian float32 I/Q tensors, then
// n one-byte labels (0 = signal, 1 = noise).
// ---------------------------------------------------------------------------

inline constexpr char kDatasetMagic[4] = {'C', 'V', 'D', 'S'};
inline constexpr std::uint32_t kDatasetVersion = 1;

struct DatasetHeader {
    std::uint32_t m = 0;
    std::uint64_t n_examples = 0;
    std::uint64_t train_count = 0;
    std::uint64_t config_hash = 0;
    std::uint64_t master_seed = 0;
};

inline void write_dataset(const std::string& path, const SplitDataset& data, int m,
                          std::uint64_t config_hash, std::uint64_t master_seed) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ArtifactError("write_dataset: cannot open " + path);
    os.write(kDatasetMagic, 4);
    detail::write_pod<std::uint32_t>(os, kDatasetVersion);
    detail::write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(m));
    detail::write_pod<std::uint64_t>(os, data.examples.size());
    detail::write_pod<std::uint64_t>(os, data.train_count);
    detail::write_pod<std::uint64_t>(os, config_hash);
    detail::write_pod<std::uint64_t>(os, master_seed);
    for (const LabeledExample& ex : data.examples) detail::write_f32(os, ex.input);
    for (const LabeledExample& ex : data.examples)
        detail::write_pod<std::uint8_t>(os, static_cast<std::uint8_t>(ex.label));
    if (!os) throw ArtifactError("write_dataset: write failed for " + path);
}

inline SplitDataset read_dataset(const std::string& path, DatasetHeader* header_out = nullptr) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ArtifactError("read_dataset: cannot open " + path);
    char magic[4] = {};
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kDatasetMagic, 4) != 0)
        throw ArtifactError("read_dataset: bad magic in " + path);
    const auto version = detail::read_pod<std::uint32_t>(is);
    if (version != kDatasetVersion)
        throw ArtifactError("read_dataset: unsupported version " + std::to_string(version) + " in " + path);
    DatasetHeader hdr;
    hdr.m = detail::read_pod<std::uint32_t>(is);
    hdr.n_examples = detail::read_pod<std::uint64_t>(is);
    hdr.train_count = detail::read_pod<std::uint64_t>(is);
    hdr.config_hash = detail::read_pod<std::uint64_t>(is);
    hdr.master_seed = detail::read_pod<std::uint64_t>(is);
    if (!is || hdr.m < 3 || hdr.m > 65536 || hdr.train_count > hdr.n_examples)
        throw ArtifactError("read_dataset: corrupt header in " + path);
    SplitDataset data;
    data.train_count = hdr.train_count;
    data.examples.resize(hdr.n_examples);
    for (LabeledExample& ex : data.examples) {
        ex.input.resize(2 * static_cast<std::size_t>(hdr.m));
        detail::read_f32(is, ex.input);
    }
    for (LabeledExample& ex : data.examples) {
        const auto raw = detail::read_pod<std::uint8_t>(is);
        if (raw > 1) throw ArtifactError("read_dataset: bad label byte in " + path);
        ex.label = static_cast<Label>(raw);
    }
    if (!is) throw ArtifactError("read_dataset: truncated data in " + path);
    if (header_out) *header_out = hdr;
    return data;
}

// ---------------------------------------------------------------------------
// CSV artifacts
// ---------------------------------------------------------------------------

inline constexpr const char* kReportCsvHeader =
    "ris_index,perturb_dbm,p_det_rx,p_det_eve,snr_rx_db,snr_eve_db,n_trials,seed";

inline std::string report_to_csv(const DetectionReport& report, std::uint64_t config_hash) {
    std::string out = artifact_comment(config_hash, report.seed) + "\n";
    out += kReportCsvHeader;
    out += '\n';
    for (const ReportRow& r : report.rows) {
        out += std::to_string(r.ris_index) + ',' + fmt_double(r.perturb_dbm) + ',' +
               fmt_double(r.p_det_rx) + ',' + fmt_double(r.p_det_eve) + ',' + fmt_double(r.snr_rx_db) +
               ',' + fmt_double(r.snr_eve_db) + ',' + std::to_string(report.n_trials) + ',' +
               std::to_string(report.seed) + '\n';
    }
    return out;
}

inline std::string metrics_to_csv(const TrainResult& result, std::uint64_t config_hash,
                                  std::uint64_t master_seed) {
    std::string out = artifact_comment(config_hash, master_seed) + "\n";
    out += "epoch,train_loss,train_acc,val_loss,val_acc\n";
    for (const EpochMetrics& em : result.epochs) {
        out += std::to_string(em.epoch) + ',' + fmt_double(em.train_loss) + ',' +
               fmt_double(em.train_acc) + ',' + fmt_double(em.val_loss) + ',' + fmt_double(em.val_acc) +
               '\n';
    }
    return out;
}

inline std::string correlation_to_csv(const CorrelationResult& result, std::uint64_t config_hash) {
    std::string out = artifact_comment(config_hash, result.seed) + "\n";
    out += "ris_index,snr_rx_linear,snr_rx_db,p_det_rx,p_det_eve,n_trials,seed\n";
    for (const CorrelationRow& r : result.table) {
        out += std::to_string(r.ris_index) + ',' + fmt_double(r.snr_rx_linear) + ',' +
               fmt_double(r.snr_rx_db) + ',' + fmt_double(r.p_det_rx) + ',' + fmt_double(r.p_det_eve) +
               ',' + std::to_string(result.n_trials) + ',' + std::to_string(result.seed) + '\n';
    }
    return out;
}

/// Per-codeword plot series: x = perturbation power dBm, y = detection.
inline std::string plot_series_csv(const DetectionReport& report, int ris_index,
                                   std::uint64_t config_hash) {
    std::string out = artifact_comment(config_hash, report.seed) + "\n";
    out += "perturb_dbm,p_det_rx,p_det_eve\n";
    for (const ReportRow& r : report.rows) {
        if (r.ris_index != ris_index) continue;
        out += fmt_double(r.perturb_dbm) + ',' + fmt_double(r.p_det_rx) + ',' + fmt_double(r.p_det_eve) +
               '\n';
    }
    return out;
}

inline void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ArtifactError("cannot open " + path + " for writing");
    os << contents;
    if (!os) throw ArtifactError("write failed for " + path);
}

}  // namespace covris
