#pragma once

#include <stdexcept>
#include <string>

namespace covris {

/// Channel algebra produced a gain that makes the requested operation meaningless
/// (all-zero calibration gains, zero effective gain in the attack path).
struct DegenerateChannelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Loss gradient vanished, so no attack direction exists.
struct ZeroGradientError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Training data violates its contract (e.g. only one class present).
struct InvalidDatasetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Pearson correlation requested on a zero-variance column.
struct UndefinedCorrelationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A persisted artifact is missing, truncated or fails its format checks.
struct ArtifactError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Run configuration file is missing, malformed or holds bad values.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace covris
