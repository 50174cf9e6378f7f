#pragma once

#include <stdexcept>
#include <string>

namespace escg {

// Invalid runtime configuration (bad parameter combinations, misaligned batch sizes).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem-level failure: missing file, unwritable directory.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed file content (ragged CSV rows, unknown keys, out-of-range values).
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// Simulation aborted mid-run (corrupt lattice value, worker failure).
struct EngineError : std::runtime_error {
    explicit EngineError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace escg
