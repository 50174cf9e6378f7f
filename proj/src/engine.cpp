#include "escg/engine.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <random>
#include <utility>

namespace escg {

namespace {

// Snapshot schedule: 0 plus {1,2,5} x 10^k, and always the final MCS.
bool is_save_mcs(std::int64_t mcs, std::int64_t limit) {
    if (mcs == 0 || mcs == limit) return true;
    std::int64_t lead = mcs;
    while (lead >= 10 && lead % 10 == 0) lead /= 10;
    return lead == 1 || lead == 2 || lead == 5;
}

void print_density_line(std::ostream& out, const RunState& state) {
    const double n = static_cast<double>(state.lattice.size());
    char buf[32];
    out << state.current_mcs;
    for (auto c : state.trace.counts.back()) {
        std::snprintf(buf, sizeof buf, "%.6f", static_cast<double>(c) / n);
        out << ',' << buf;
    }
    out << '\n';
}

// Joins an in-flight generation job on scope exit, so buffers outlive any
// worker still writing into them when a step job throws.
struct JobGuard {
    std::shared_ptr<ThreadPool::Job> job;
    ~JobGuard() {
        if (!job) return;
        try {
            job->wait();
        } catch (...) {
        }
    }
};

// Density record plus all per-record checks shared by the three engines.
// Returns the final status when the run should stop.
std::optional<RunStatus> record_and_check(RunState& state, const SimParams& params, const RunHooks& hooks,
                                          ThreadPool* pool) {
    state.trace.append(state.current_mcs, densities(state.lattice, state.model.size, pool));
    if (hooks.console && state.current_mcs % params.print_frequency == 0)
        print_density_line(*hooks.console, state);
    if (params.save && hooks.on_save && is_save_mcs(state.current_mcs, params.mcs_limit)) hooks.on_save(state);
    if (hooks.on_record && !hooks.on_record(state)) return RunStatus::Stopped;
    if (state.current_mcs >= params.mcs_limit) return RunStatus::Completed;
    if (stasis(state.trace)) return RunStatus::Stasis;
    return std::nullopt;
}

StepContext make_context(const RunState& state, const SimParams& params) {
    return StepContext{&state.model,
                       state.rates,
                       NeighborhoodSpec::of(params.neighbourhood),
                       state.lattice.length,
                       state.lattice.height,
                       params.flux};
}

}  // namespace

std::vector<std::uint64_t> densities(const Lattice& lattice, int species, ThreadPool* pool) {
    const std::int64_t n = lattice.size();
    auto tally = [&](std::int64_t begin, std::int64_t end, std::vector<std::uint64_t>& counts) {
        for (std::int64_t i = begin; i < end; ++i) {
            const std::int32_t v = lattice.cells[i];
            if (v < 0 || v > species) throw EngineError("corrupt lattice value " + std::to_string(v));
            ++counts[v];
        }
    };
    if (pool && pool->workers() > 1) {
        const int w = pool->workers();
        std::vector<std::vector<std::uint64_t>> parts(w, std::vector<std::uint64_t>(species + 1, 0));
        pool->parallel_for(w, [&](std::int64_t k) {
            auto [begin, end] = stream_chunk(n, w, static_cast<int>(k));
            tally(begin, end, parts[k]);
        });
        std::vector<std::uint64_t> total(species + 1, 0);
        for (const auto& part : parts)
            for (std::size_t s = 0; s < total.size(); ++s) total[s] += part[s];
        return total;
    }
    std::vector<std::uint64_t> total(species + 1, 0);
    tally(0, n, total);
    return total;
}

RunStatus run_serial(RunState& state, const SimParams& params, Mt19937& stream, const RunHooks& hooks) {
    params.validate();
    const auto n = static_cast<std::uint32_t>(state.lattice.size());
    const StepContext ctx = make_context(state, params);
    const auto arity = static_cast<std::uint32_t>(ctx.spec.arity);
    const PlainCellAccess grid{state.lattice.cells.data()};
    for (;;) {
        if (auto status = record_and_check(state, params, hooks, nullptr)) return *status;
        for (std::uint32_t i = 0; i < n; ++i) {
            StepDraw draw;
            draw.cell = stream.extract() % n;
            draw.direction = static_cast<int>(stream.extract() % arity);
            draw.action = stream.next_unit();
            elementary_step(grid, ctx, draw);
        }
        ++state.current_mcs;
    }
}

namespace {

// Consume draws [offset, offset + count) of a batch, split contiguously
// across the pool's workers with indivisible cell updates.
void step_batch_range(RunState& state, const StepContext& ctx, const RandomBatch& batch, std::int64_t offset,
                      std::int64_t count, ThreadPool& pool) {
    const int w = pool.workers();
    const AtomicCellAccess grid{state.lattice.cells.data()};
    pool.parallel_for(w, [&](std::int64_t k) {
        auto [begin, end] = stream_chunk(count, w, static_cast<int>(k));
        for (std::int64_t i = offset + begin; i < offset + end; ++i) {
            elementary_step(grid, ctx,
                            StepDraw{static_cast<std::int64_t>(batch.cells[i]),
                                     static_cast<int>(batch.directions[i]), batch.actions[i]});
        }
    });
}

}  // namespace

RunStatus run_parallel_mcs(RunState& state, const SimParams& params, StreamSet& streams, ThreadPool& pool,
                           const RunHooks& hooks) {
    params.validate();
    const std::int64_t n = state.lattice.size();
    const std::int64_t len = align_num_randoms(params.num_randoms, n);
    const StepContext ctx = make_context(state, params);

    RandomBatch bufs[2];
    bufs[0].resize(len);
    bufs[1].resize(len);
    fill_batch(streams, bufs[0], n, ctx.spec.arity, &pool);

    int cur = 0;
    std::int64_t offset = 0;
    JobGuard refill;
    for (;;) {
        if (auto status = record_and_check(state, params, hooks, &pool)) return *status;
        if (offset == 0) refill.job = fill_batch_async(streams, bufs[1 - cur], n, ctx.spec.arity, pool);
        step_batch_range(state, ctx, bufs[cur], offset, n, pool);
        offset += n;
        if (offset == len) {
            refill.job->wait();
            refill.job.reset();
            cur = 1 - cur;
            offset = 0;
        }
        ++state.current_mcs;
    }
}

RunStatus run_max_step(RunState& state, const SimParams& params, StreamSet& streams, ThreadPool& pool,
                       const RunHooks& hooks) {
    params.validate();
    const std::int64_t n = state.lattice.size();
    const std::int64_t len = align_num_randoms(params.num_randoms, n);
    const std::int64_t step_mcs = len / n;
    const StepContext ctx = make_context(state, params);

    RandomBatch bufs[2];
    bufs[0].resize(len);
    bufs[1].resize(len);
    fill_batch(streams, bufs[0], n, ctx.spec.arity, &pool);

    int cur = 0;
    JobGuard refill;
    for (;;) {
        if (auto status = record_and_check(state, params, hooks, &pool)) return *status;
        // Never advance past the MCS limit; a final partial batch leaves its
        // tail unconsumed.
        const std::int64_t advance = std::min(step_mcs, params.mcs_limit - state.current_mcs);
        refill.job = fill_batch_async(streams, bufs[1 - cur], n, ctx.spec.arity, pool);
        step_batch_range(state, ctx, bufs[cur], 0, advance * n, pool);
        refill.job->wait();
        refill.job.reset();
        cur = 1 - cur;
        state.current_mcs += advance;
    }
}

SimulationResult simulate(const SimParams& params, const DominanceModel& model, EngineMode mode,
                          ThreadPool* pool, const RunHooks& hooks, StreamSet* streams,
                          std::optional<RunState> resume_from) {
    params.validate();
    model.validate();
    if (model.size != params.species)
        throw ConfigError("species count (" + std::to_string(params.species) +
                          ") does not match dominance size (" + std::to_string(model.size) + ")");

    std::unique_ptr<ThreadPool> own_pool;
    if (mode != EngineMode::Serial && !pool) {
        unsigned hw = std::thread::hardware_concurrency();
        own_pool = std::make_unique<ThreadPool>(hw ? static_cast<int>(hw) : 1);
        pool = own_pool.get();
    }

    const std::uint64_t seed = params.seed ? *params.seed : std::random_device{}();
    const int n_streams = mode == EngineMode::Serial ? 1 : pool->workers();
    std::unique_ptr<StreamSet> own_streams;
    if (!streams) {
        own_streams = std::make_unique<StreamSet>(seed, n_streams);
        streams = own_streams.get();
    }

    SimulationResult result;
    if (resume_from) {
        result.state = std::move(*resume_from);
    } else {
        result.state.lattice = init_lattice(params, streams->stream(0));
        result.state.current_mcs = 0;
    }
    result.state.model = model;
    result.state.rates = action_rates(params.mobility, params.cells());

    switch (mode) {
        case EngineMode::Serial:
            result.status = run_serial(result.state, params, streams->stream(0), hooks);
            break;
        case EngineMode::ParallelMcs:
            result.status = run_parallel_mcs(result.state, params, *streams, *pool, hooks);
            break;
        case EngineMode::MaxStep:
            result.status = run_max_step(result.state, params, *streams, *pool, hooks);
            break;
    }
    return result;
}

}  // namespace escg
