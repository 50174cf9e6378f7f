#pragma once

#include <cstdint>
#include <vector>

#include "escg/errors.hpp"
#include "escg/mt19937.hpp"
#include "escg/params.hpp"

namespace escg {

// Flat occupancy grid: 0 = empty site, 1..S = species identity.
// index = row * L + col.
struct Lattice {
    int length = 0;  // L, columns
    int height = 0;  // H, rows
    std::vector<std::int32_t> cells;

    Lattice() = default;
    Lattice(int l, int h) : length(l), height(h), cells(static_cast<std::size_t>(l) * h, 0) {}

    std::int64_t size() const { return static_cast<std::int64_t>(length) * height; }
    std::int32_t at(int row, int col) const { return cells[static_cast<std::size_t>(row) * length + col]; }
    std::int32_t& at(int row, int col) { return cells[static_cast<std::size_t>(row) * length + col]; }

    bool operator==(const Lattice&) const = default;
};

// Flat index of the neighbour one step along `dir`. flux=true wraps both
// axes; flux=false mirrors the off-lattice step one cell inward.
inline std::int64_t neighbor_index(std::int64_t i, int dir, const NeighborhoodSpec& spec, int length,
                                   int height, bool flux) {
    if (dir < 0 || dir >= spec.arity) throw ConfigError("direction " + std::to_string(dir) + " out of range");
    int row = static_cast<int>(i / length);
    int col = static_cast<int>(i % length);
    auto [drow, dcol] = spec.offsets[dir];
    row += drow;
    col += dcol;
    if (flux) {
        row = (row + height) % height;
        col = (col + length) % length;
    } else {
        if (row < 0) row = -row;
        if (row >= height) row = 2 * (height - 1) - row;
        if (col < 0) col = -col;
        if (col >= length) col = 2 * (length - 1) - col;
    }
    return static_cast<std::int64_t>(row) * length + col;
}

// Uniform random initial population: each cell empty with probability
// empty_prob, otherwise a uniform species from [1, S].
inline Lattice init_lattice(const SimParams& params, Mt19937& rng) {
    params.validate();
    Lattice lattice(params.length, params.height);
    const auto species = static_cast<std::uint32_t>(params.species);
    if (params.empty_prob >= 1.0) return lattice;
    for (auto& cell : lattice.cells) {
        if (params.empty_prob > 0.0 && rng.next_unit() < params.empty_prob) {
            cell = 0;
            continue;
        }
        cell = static_cast<std::int32_t>(rng.extract() % species) + 1;
    }
    return lattice;
}

}  // namespace escg
