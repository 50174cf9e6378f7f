#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>

#include "escg/errors.hpp"

namespace escg {

enum class Neighbourhood : int {
    VonNeumann4 = 4,
    Moore8 = 8,
};

// Full runtime configuration. Field defaults mirror the CLI defaults.
struct SimParams {
    int length = 200;                // lattice columns, L
    int height = 200;                // lattice rows, H
    std::int64_t mcs_limit = 100000;
    Neighbourhood neighbourhood = Neighbourhood::VonNeumann4;
    int print_frequency = 200;       // MCS between console density lines
    double mobility = 3e-05;
    int species = 3;
    bool flux = true;                // periodic wrap; false = mirror reflect
    double empty_prob = 0.0;
    bool save = false;
    bool dominance_import = false;
    bool resume = false;
    std::int64_t num_randoms = 100000000;
    bool max_step = false;
    std::optional<std::uint64_t> seed;

    std::int64_t cells() const { return static_cast<std::int64_t>(length) * height; }

    void validate() const {
        if (length < 2 || height < 2) throw ConfigError("lattice dimensions must be at least 2x2");
        if (mcs_limit < 0) throw ConfigError("mcs limit must be non-negative");
        if (print_frequency < 1) throw ConfigError("print frequency must be positive");
        if (mobility < 0.0) throw ConfigError("mobility must be non-negative");
        // S = 1 is a degenerate but runnable configuration: it reaches
        // stasis at the first density record.
        if (species < 1 || species > 64) throw ConfigError("species count must be in [1, 64]");
        if (cells() > (std::int64_t{1} << 31)) throw ConfigError("lattice exceeds the supported cell count");
        if (empty_prob < 0.0 || empty_prob > 1.0) throw ConfigError("empty probability must be in [0, 1]");
        if (num_randoms < 1) throw ConfigError("numRandoms must be positive");
    }
};

// Relative weights of the three elementary actions. Consumers draw
// r in [0, total) and bucket as migration / interaction / reproduction.
struct ActionRates {
    double mu = 1.0;       // interaction
    double sigma = 1.0;    // reproduction
    double epsilon = 0.0;  // migration
    double total = 2.0;
};

// epsilon = 2*M*N; mu and sigma stay at 1.
inline ActionRates action_rates(double mobility, std::int64_t cells) {
    if (mobility < 0.0) throw ConfigError("mobility must be non-negative");
    if (cells < 1) throw ConfigError("cell count must be positive");
    ActionRates r;
    r.mu = 1.0;
    r.sigma = 1.0;
    r.epsilon = 2.0 * mobility * static_cast<double>(cells);
    r.total = r.mu + r.sigma + r.epsilon;
    return r;
}

// Fixed direction ordering: 0=up 1=down 2=left 3=right, then the four
// diagonals 4=up-left 5=up-right 6=down-left 7=down-right for Moore.
struct NeighborhoodSpec {
    int arity = 4;
    std::array<std::pair<int, int>, 8> offsets{};  // (drow, dcol)

    static NeighborhoodSpec of(Neighbourhood n) {
        NeighborhoodSpec spec;
        spec.arity = static_cast<int>(n);
        spec.offsets = {{{-1, 0}, {1, 0}, {0, -1}, {0, 1}, {-1, -1}, {-1, 1}, {1, -1}, {1, 1}}};
        return spec;
    }
};

}  // namespace escg
