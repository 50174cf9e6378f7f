#include "escg/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

#include "escg/persistence.hpp"

namespace escg {

namespace {

void set_edge(DominanceModel& m, int a, int b, double rate) {
    m.entries[static_cast<std::size_t>(a - 1) * m.size + (b - 1)] = rate;
}

std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

// IID trial seeds stay reproducible while the stream hash keeps
// neighbouring seeds decorrelated.
std::uint64_t trial_seed(std::uint64_t base, int trial) { return base + static_cast<std::uint64_t>(trial); }

double run_timed(const SimParams& params, const DominanceModel& model, EngineMode mode, ThreadPool* pool) {
    const auto start = std::chrono::steady_clock::now();
    simulate(params, model, mode, pool);
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

std::string engine_mode_name(EngineMode mode) {
    switch (mode) {
        case EngineMode::Serial: return "serial";
        case EngineMode::ParallelMcs: return "parallel";
        case EngineMode::MaxStep: return "maxstep";
    }
    return "serial";
}

EngineMode parse_engine_mode(const std::string& name) {
    if (name == "serial") return EngineMode::Serial;
    if (name == "parallel") return EngineMode::ParallelMcs;
    if (name == "maxstep") return EngineMode::MaxStep;
    throw ConfigError("unknown engine mode '" + name + "'");
}

DominanceModel make_rpsls() { return make_circulant(5, {1, 2}); }

DominanceModel make_rpsls_ablated() {
    auto model = make_rpsls();
    set_edge(model, 1, 2, 0.0);  // Rock no longer crushes Scissors
    return model;
}

DominanceModel make_park8(double alpha, double beta, double gamma) {
    for (double rate : {alpha, beta, gamma})
        if (!(rate >= 0.0 && rate <= 1.0)) throw ConfigError("park8 rates must lie in [0, 1]");
    DominanceModel model;
    model.size = 8;
    model.kind = DominanceModel::Kind::Rated;
    model.entries.assign(64, 0.0);
    for (int i = 1; i <= 8; ++i) {
        set_edge(model, i, i % 8 + 1, gamma);        // ring: i beats i+1
        set_edge(model, i, (i + 1) % 8 + 1, alpha);  // alliance cycle: i beats i+2
    }
    set_edge(model, 1, 5, beta);  // symmetry breaking inside the odd alliance
    set_edge(model, 3, 7, beta);
    model.validate();
    return model;
}

std::size_t ExtinctionStats::in_window(std::int64_t lo, std::int64_t hi) const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < times.size(); ++i)
        if (!censored[i] && times[i] >= lo && times[i] <= hi) ++n;
    return n;
}

MeanStd ExtinctionStats::summary() const {
    std::vector<double> uncensored;
    for (std::size_t i = 0; i < times.size(); ++i)
        if (!censored[i]) uncensored.push_back(static_cast<double>(times[i]));
    return mean_std(uncensored);
}

ExtinctionStats run_ablated_rpsls(int length, int trials, std::int64_t mcs, std::uint64_t seed,
                                  EngineMode mode, ThreadPool* pool) {
    if (trials < 1) throw ConfigError("trials must be at least 1");
    const auto model = make_rpsls_ablated();
    ExtinctionStats stats;
    stats.budget = mcs;
    for (int t = 0; t < trials; ++t) {
        SimParams params;
        params.length = length;
        params.height = length;
        params.species = 5;
        params.mcs_limit = mcs;
        params.seed = trial_seed(seed, t);
        std::int64_t extinct_at = -1;
        RunHooks hooks;
        hooks.on_record = [&](const RunState& state) {
            if (state.trace.counts.back()[kPaperSpecies] == 0) {
                extinct_at = state.current_mcs;
                return false;
            }
            return true;
        };
        simulate(params, model, mode, pool, hooks);
        stats.times.push_back(extinct_at >= 0 ? extinct_at : mcs);
        stats.censored.push_back(extinct_at < 0);
    }
    return stats;
}

CoexistenceResult run_coexistence_probe(double mobility, int length, std::int64_t mcs, int trials,
                                        std::uint64_t seed, EngineMode mode, ThreadPool* pool) {
    if (trials < 1) throw ConfigError("trials must be at least 1");
    const auto model = make_circulant(3, {1});
    CoexistenceResult result;
    result.trials = trials;
    for (int t = 0; t < trials; ++t) {
        SimParams params;
        params.length = length;
        params.height = length;
        params.species = 3;
        params.mobility = mobility;
        params.empty_prob = 0.1;
        params.mcs_limit = mcs;
        params.seed = trial_seed(seed, t);
        auto run = simulate(params, model, mode, pool);
        if (run.state.trace.alive.size() == 3) ++result.coexisting;
    }
    result.probability = static_cast<double>(result.coexisting) / trials;
    return result;
}

SurvivalTable run_park_sweep(const SweepSpec& spec, ThreadPool* pool) {
    if (spec.trials < 1) throw ConfigError("trials must be at least 1");
    if (spec.alphas.empty()) throw ConfigError("sweep needs at least one alpha value");
    const std::int64_t mcs =
        spec.mcs > 0 ? spec.mcs : static_cast<std::int64_t>(spec.length) * spec.length;
    SurvivalTable table;
    for (double alpha : spec.alphas) {
        const auto model = make_park8(alpha, spec.beta, spec.gamma);
        // survivor indicator per trial, per species
        std::vector<std::vector<double>> survived(9);
        for (int t = 0; t < spec.trials; ++t) {
            SimParams params;
            params.length = spec.length;
            params.height = spec.length;
            params.species = 8;
            params.mobility = 0.0;  // immobile variant
            params.mcs_limit = mcs;
            params.seed = trial_seed(spec.seed, t);
            auto run = simulate(params, model, spec.mode, pool);
            const auto& counts = run.state.trace.counts.back();
            for (int s = 1; s <= 8; ++s) survived[s].push_back(counts[s] > 0 ? 1.0 : 0.0);
        }
        for (int s = 1; s <= 8; ++s) {
            const auto stat = mean_std(survived[s]);
            SurvivalCell cell;
            cell.alpha = alpha;
            cell.species = s;
            cell.survival_prob = stat.mean;
            cell.std_dev = stat.std_dev;
            cell.trials = spec.trials;
            cell.single_trial = spec.trials == 1;
            table.cells.push_back(cell);
        }
    }
    return table;
}

std::vector<BenchRow> run_bench_matrix(const std::vector<int>& sizes, const std::vector<EngineMode>& modes,
                                       std::int64_t mcs, int runs, int warmups, std::uint64_t seed,
                                       ThreadPool* pool, std::int64_t num_randoms) {
    if (runs < 1) throw ConfigError("bench needs at least one measured run");
    std::vector<BenchRow> rows;
    for (int length : sizes) {
        for (EngineMode mode : modes) {
            SimParams params;
            params.length = length;
            params.height = length;
            params.mcs_limit = mcs;
            params.num_randoms = num_randoms > 0 ? num_randoms : 100 * params.cells();
            params.seed = seed;
            const auto model = make_circulant(3, {1});
            for (int w = 0; w < warmups; ++w) run_timed(params, model, mode, pool);
            std::vector<double> secs;
            for (int r = 0; r < runs; ++r) secs.push_back(run_timed(params, model, mode, pool));
            auto sorted = secs;
            std::sort(sorted.begin(), sorted.end());
            const auto stat = mean_std(secs);
            BenchRow row;
            row.length = length;
            row.mode = mode;
            row.mean_s = stat.mean;
            row.std_s = stat.std_dev;
            row.median_s = sorted[sorted.size() / 2];
            row.runs = runs;
            row.workers = pool ? pool->workers() : 1;
            row.seed = seed;
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<TuneRow> run_tuning_curve(int length, const std::vector<std::int64_t>& multipliers,
                                      std::int64_t mcs, std::uint64_t seed, ThreadPool* pool, int warmups) {
    if (multipliers.empty()) throw ConfigError("tuning curve needs at least one multiplier");
    std::vector<TuneRow> rows;
    const auto model = make_circulant(3, {1});
    bool warmed = false;
    for (std::int64_t mult : multipliers) {
        SimParams params;
        params.length = length;
        params.height = length;
        params.mcs_limit = mcs;
        params.num_randoms = mult * params.cells();
        params.max_step = true;
        params.seed = seed;
        if (!warmed) {
            for (int w = 0; w < warmups; ++w) run_timed(params, model, EngineMode::MaxStep, pool);
            warmed = true;
        }
        TuneRow row;
        row.multiplier = mult;
        row.num_randoms = params.num_randoms;
        row.seconds = run_timed(params, model, EngineMode::MaxStep, pool);
        rows.push_back(row);
    }
    return rows;
}

void write_extinction_csv(const ExtinctionStats& stats, const std::filesystem::path& path) {
    auto out = open_csv(path);
    out << "trial,extinction_mcs,censored\n";
    for (std::size_t i = 0; i < stats.times.size(); ++i)
        out << i << ',' << stats.times[i] << ',' << (stats.censored[i] ? 1 : 0) << '\n';
}

void write_coexistence_csv(const CoexistenceResult& result, double mobility, int length, std::int64_t mcs,
                           const std::filesystem::path& path) {
    auto out = open_csv(path);
    out << "mobility,length,mcs,trials,coexisting,probability\n";
    out << format_double(mobility) << ',' << length << ',' << mcs << ',' << result.trials << ','
        << result.coexisting << ',' << format_double(result.probability) << '\n';
}

void write_sweep_csv(const SurvivalTable& table, const std::filesystem::path& path) {
    auto out = open_csv(path);
    out << "alpha,species,survival_prob,std,n\n";
    for (const auto& cell : table.cells) {
        out << format_double(cell.alpha) << ',' << cell.species << ','
            << format_double(cell.survival_prob) << ',' << format_double(cell.std_dev) << ','
            << cell.trials << '\n';
    }
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::int64_t mcs, const std::filesystem::path& path) {
    auto out = open_csv(path);
    out << "length,mode,mcs,mean_s,std_s,median_s,runs,workers,seed\n";
    for (const auto& row : rows) {
        out << row.length << ',' << engine_mode_name(row.mode) << ',' << mcs << ','
            << format_double(row.mean_s) << ',' << format_double(row.std_s) << ','
            << format_double(row.median_s) << ',' << row.runs << ',' << row.workers << ',' << row.seed
            << '\n';
    }
}

void write_tuning_csv(const std::vector<TuneRow>& rows, int length, std::int64_t mcs,
                      const std::filesystem::path& path) {
    auto out = open_csv(path);
    out << "length,mcs,multiplier,num_randoms,seconds\n";
    for (const auto& row : rows)
        out << length << ',' << mcs << ',' << row.multiplier << ',' << row.num_randoms << ','
            << format_double(row.seconds) << '\n';
}

}  // namespace escg
