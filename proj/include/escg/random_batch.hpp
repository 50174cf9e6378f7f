#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "escg/errors.hpp"
#include "escg/mt19937.hpp"
#include "escg/thread_pool.hpp"

namespace escg {

// One pre-generated batch of draws: cell index, neighbour direction, and
// action real per elementary step. All three arrays share one length, a
// multiple of the lattice cell count.
struct RandomBatch {
    std::vector<std::uint32_t> cells;
    std::vector<std::uint8_t> directions;
    std::vector<float> actions;  // uniform in [0, 1]

    std::int64_t len() const { return static_cast<std::int64_t>(cells.size()); }

    void resize(std::int64_t n) {
        cells.resize(n);
        directions.resize(n);
        actions.resize(n);
    }
};

// Truncate the requested batch length to a whole number of Monte Carlo steps.
inline std::int64_t align_num_randoms(std::int64_t requested, std::int64_t cells) {
    if (cells < 1) throw ConfigError("cell count must be positive");
    if (requested < cells)
        throw ConfigError("numRandoms (" + std::to_string(requested) + ") must be at least the cell count (" +
                          std::to_string(cells) + ")");
    return requested / cells * cells;
}

// Independent generator streams, one per worker. Stream k is seeded with
// seed_mix(global_seed + k, k) and burnt in before first use.
class StreamSet {
public:
    StreamSet(std::uint64_t global_seed, int count, std::uint64_t burn_in = kDefaultBurnIn) {
        if (count < 1) throw ConfigError("stream count must be positive");
        streams_.reserve(count);
        for (int k = 0; k < count; ++k) {
            auto seed = seed_mix(static_cast<std::uint32_t>(global_seed + static_cast<std::uint64_t>(k)),
                                 static_cast<std::uint32_t>(k));
            streams_.emplace_back(seed);
            streams_.back().discard(burn_in);
        }
    }

    int count() const { return static_cast<int>(streams_.size()); }
    Mt19937& stream(int k) { return streams_[k]; }
    const Mt19937& stream(int k) const { return streams_[k]; }

    // Replace all stream states (checkpoint restore).
    void restore(std::vector<Mt19937> streams) {
        if (streams.empty()) throw ConfigError("stream count must be positive");
        streams_ = std::move(streams);
    }

private:
    std::vector<Mt19937> streams_;
};

// Contiguous sub-range of a batch owned by one stream.
inline std::pair<std::int64_t, std::int64_t> stream_chunk(std::int64_t len, int streams, int k) {
    return {len * k / streams, len * (k + 1) / streams};
}

// Fill [begin, end) of the batch from one stream: three extractions per
// element, in cell / direction / action order.
inline void fill_chunk(Mt19937& g, RandomBatch& batch, std::int64_t begin, std::int64_t end,
                       std::int64_t n_cells, int arity) {
    for (std::int64_t i = begin; i < end; ++i) {
        batch.cells[i] = g.extract() % static_cast<std::uint32_t>(n_cells);
        batch.directions[i] = static_cast<std::uint8_t>(g.extract() % static_cast<std::uint32_t>(arity));
        batch.actions[i] = g.next_unit();
    }
}

// Partition the batch contiguously across all streams and fill each chunk.
// The output is a pure function of the stream states regardless of pool use.
inline void fill_batch(StreamSet& streams, RandomBatch& batch, std::int64_t n_cells, int arity,
                       ThreadPool* pool = nullptr) {
    if (batch.len() <= 0) throw ConfigError("batch length must be positive");
    const int k = streams.count();
    auto fill_one = [&](std::int64_t s) {
        auto [begin, end] = stream_chunk(batch.len(), k, static_cast<int>(s));
        fill_chunk(streams.stream(static_cast<int>(s)), batch, begin, end, n_cells, arity);
    };
    if (pool && k > 1) {
        pool->parallel_for(k, fill_one);
    } else {
        for (int s = 0; s < k; ++s) fill_one(s);
    }
}

// Async variant for overlapping generation with consumption of another batch.
inline std::shared_ptr<ThreadPool::Job> fill_batch_async(StreamSet& streams, RandomBatch& batch,
                                                         std::int64_t n_cells, int arity, ThreadPool& pool) {
    if (batch.len() <= 0) throw ConfigError("batch length must be positive");
    const int k = streams.count();
    return pool.submit(k, [&streams, &batch, n_cells, arity, k](std::int64_t s) {
        auto [begin, end] = stream_chunk(batch.len(), k, static_cast<int>(s));
        fill_chunk(streams.stream(static_cast<int>(s)), batch, begin, end, n_cells, arity);
    });
}

}  // namespace escg
