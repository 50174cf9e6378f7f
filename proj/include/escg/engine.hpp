#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "escg/dominance.hpp"
#include "escg/lattice.hpp"
#include "escg/params.hpp"
#include "escg/random_batch.hpp"
#include "escg/thread_pool.hpp"

namespace escg {

enum class EngineMode { Serial, ParallelMcs, MaxStep };

enum class RunStatus { Completed, Stasis, Stopped };

// Per-MCS species counts. counts[r][0] is the empty-site tally; the row sum
// is always the cell count N.
struct DensityTrace {
    std::vector<std::int64_t> steps;
    std::vector<std::vector<std::uint64_t>> counts;
    std::vector<int> alive;  // species with nonzero count at the latest record

    void append(std::int64_t mcs, std::vector<std::uint64_t> row) {
        alive.clear();
        for (std::size_t s = 1; s < row.size(); ++s)
            if (row[s] > 0) alive.push_back(static_cast<int>(s));
        steps.push_back(mcs);
        counts.push_back(std::move(row));
    }
};

// True once at most one species remains; an all-empty lattice counts as
// stasis too (nothing can evolve further).
inline bool stasis(const DensityTrace& trace) {
    if (trace.counts.empty()) throw ConfigError("stasis needs at least one density record");
    return trace.alive.size() <= 1;
}

struct RunState {
    Lattice lattice;
    std::int64_t current_mcs = 0;
    DensityTrace trace;
    ActionRates rates;
    DominanceModel model;
};

// One elementary step's pre-drawn randomness.
struct StepDraw {
    std::int64_t cell = 0;
    int direction = 0;
    float action = 0.0f;  // uniform in [0, 1], scaled by rates.total on use
};

// Observer hooks. on_record runs after every density record; returning
// false stops the run (status Stopped). console receives one
// "mcs,density_0,...,density_S" line every print_frequency MCS.
struct RunHooks {
    std::function<bool(const RunState&)> on_record;
    std::function<void(const RunState&)> on_save;
    std::ostream* console = nullptr;
};

// Cell accessors: the serial oracle uses plain loads/stores, the parallel
// engines route every access through relaxed single-cell atomics.
struct PlainCellAccess {
    std::int32_t* cells;
    std::int32_t load(std::int64_t i) const { return cells[i]; }
    void store(std::int64_t i, std::int32_t v) const { cells[i] = v; }
    void exchange(std::int64_t i, std::int32_t v) const { cells[i] = v; }
};

struct AtomicCellAccess {
    std::int32_t* cells;
    std::int32_t load(std::int64_t i) const {
        return std::atomic_ref<std::int32_t>(cells[i]).load(std::memory_order_relaxed);
    }
    void store(std::int64_t i, std::int32_t v) const {
        std::atomic_ref<std::int32_t>(cells[i]).store(v, std::memory_order_relaxed);
    }
    void exchange(std::int64_t i, std::int32_t v) const {
        std::atomic_ref<std::int32_t>(cells[i]).exchange(v, std::memory_order_relaxed);
    }
};

// Geometry and rate context shared by every step of a run.
struct StepContext {
    const DominanceModel* model;
    ActionRates rates;
    NeighborhoodSpec spec;
    int length;
    int height;
    bool flux;
};

// Apply one elementary step. Same-species pairs (including empty-empty)
// return untouched; otherwise the action real buckets into migration
// [0, eps), interaction [eps, eps+mu), reproduction [eps+mu, total].
// Rated interactions reuse the action real's position inside the
// interaction bucket as the success draw: conditional on the bucket it is
// again uniform in [0, 1), so no extra draw is consumed and batch
// alignment stays exact.
template <class Access>
inline void elementary_step(Access grid, const StepContext& ctx, const StepDraw& draw) {
    const std::int64_t ni = neighbor_index(draw.cell, draw.direction, ctx.spec, ctx.length, ctx.height, ctx.flux);
    const std::int32_t species = grid.load(draw.cell);
    const std::int32_t neighbour = grid.load(ni);
    if (species == neighbour) return;
    if (species > ctx.model->size || neighbour > ctx.model->size || species < 0 || neighbour < 0)
        throw EngineError("corrupt lattice value (cell " + std::to_string(draw.cell) + ")");

    const double r = static_cast<double>(draw.action) * ctx.rates.total;
    if (r < ctx.rates.epsilon) {
        // Migration: two independent single-cell exchanges, transient
        // interleavings under concurrency are part of the stochastic model.
        grid.exchange(draw.cell, neighbour);
        grid.exchange(ni, species);
    } else if (r < ctx.rates.epsilon + ctx.rates.mu) {
        if (neighbour != 0 && species != 0) {
            const double u = (r - ctx.rates.epsilon) / ctx.rates.mu;  // uniform in [0, 1)
            const double forward = ctx.model->entry(species, neighbour);
            if (forward > 0.0 && u < forward) {
                grid.store(ni, 0);
            } else {
                const double backward = ctx.model->entry(neighbour, species);
                if (backward > 0.0 && u < backward) grid.store(draw.cell, 0);
            }
        }
    } else {
        if (neighbour == 0) {
            grid.store(ni, species);
        } else if (species == 0) {
            grid.store(draw.cell, neighbour);
        }
    }
}

// Species tally; index 0 counts empty sites. With a pool, workers count
// disjoint slices into private tallies merged at the end.
std::vector<std::uint64_t> densities(const Lattice& lattice, int species, ThreadPool* pool = nullptr);

// Serial oracle: one stream, draws generated on demand, bit-reproducible
// for a fixed seed.
RunStatus run_serial(RunState& state, const SimParams& params, Mt19937& stream, const RunHooks& hooks = {});

// One MCS per dispatch: N draws consumed per step job, refill of the next
// batch overlaps stepping, densities recorded every MCS.
RunStatus run_parallel_mcs(RunState& state, const SimParams& params, StreamSet& streams, ThreadPool& pool,
                           const RunHooks& hooks = {});

// Whole-batch dispatch: numRandoms/N MCS advance per job, densities and
// stasis checks only at batch boundaries.
RunStatus run_max_step(RunState& state, const SimParams& params, StreamSet& streams, ThreadPool& pool,
                       const RunHooks& hooks = {});

// Convenience dispatcher used by the CLI, the experiments harness, and the
// Python bindings. A fresh state is initialised from params (or `resume_from`
// when given) and run under the requested mode.
struct SimulationResult {
    RunState state;
    RunStatus status = RunStatus::Completed;
};

SimulationResult simulate(const SimParams& params, const DominanceModel& model, EngineMode mode,
                          ThreadPool* pool = nullptr, const RunHooks& hooks = {},
                          StreamSet* streams = nullptr, std::optional<RunState> resume_from = std::nullopt);

}  // namespace escg
