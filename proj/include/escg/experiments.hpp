#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "escg/dominance.hpp"
#include "escg/engine.hpp"
#include "escg/params.hpp"
#include "escg/stats.hpp"
#include "escg/thread_pool.hpp"

namespace escg {

// --- Named dominance presets -------------------------------------------

// Five-species tournament C(5,{1,2}) ordered Rock, Scissors, Lizard,
// Paper, Spock: species i beats i+1 and i+2 (cyclically).
DominanceModel make_rpsls();

// Same network with the Rock -> Scissors edge removed. Paper (species 4)
// is the one whose extinction time the harness tracks.
DominanceModel make_rpsls_ablated();
inline constexpr int kPaperSpecies = 4;

// Eight-species probabilistic alliance network ("park8"). Species 1..8 sit
// on a gamma-rated one-step ring (i beats i+1). The odd species {1,3,5,7}
// and even species {2,4,6,8} each form a four-species alliance cycle at
// rate alpha (i beats i+2). Two beta-rated edges break the symmetry inside
// the odd alliance only: 1 beats 5 and 3 beats 7, which leaves species 5
// and 7 each facing a third predator. Mobility is zero in this variant.
DominanceModel make_park8(double alpha, double beta, double gamma);

// --- Extinction-window replication (ablated RPSLS) ----------------------

struct ExtinctionStats {
    std::vector<std::int64_t> times;  // first MCS with a zero Paper count; limit when censored
    std::vector<bool> censored;
    std::int64_t budget = 0;

    std::size_t in_window(std::int64_t lo, std::int64_t hi) const;
    MeanStd summary() const;
};

ExtinctionStats run_ablated_rpsls(int length, int trials, std::int64_t mcs, std::uint64_t seed,
                                  EngineMode mode = EngineMode::Serial, ThreadPool* pool = nullptr);

// --- Mobility/coexistence probe (three species) -------------------------

struct CoexistenceResult {
    int trials = 0;
    int coexisting = 0;  // trials with all three species alive at the horizon
    double probability = 0.0;
};

CoexistenceResult run_coexistence_probe(double mobility, int length, std::int64_t mcs, int trials,
                                        std::uint64_t seed, EngineMode mode = EngineMode::Serial,
                                        ThreadPool* pool = nullptr);

// --- Survival sweep over the park8 alpha axis ----------------------------

struct SweepSpec {
    std::vector<double> alphas;
    double beta = 0.75;
    double gamma = 1.0;
    int length = 100;
    int trials = 20;
    std::int64_t mcs = 0;  // 0 selects the L^2 default
    EngineMode mode = EngineMode::Serial;
    std::uint64_t seed = 1;
};

struct SurvivalCell {
    double alpha = 0.0;
    int species = 0;
    double survival_prob = 0.0;
    double std_dev = 0.0;
    int trials = 0;
    bool single_trial = false;  // std undefined, reported as 0
};

struct SurvivalTable {
    std::vector<SurvivalCell> cells;
};

SurvivalTable run_park_sweep(const SweepSpec& spec, ThreadPool* pool = nullptr);

// --- Timing harness ------------------------------------------------------

struct BenchRow {
    int length = 0;
    EngineMode mode = EngineMode::Serial;
    double mean_s = 0.0;
    double std_s = 0.0;
    double median_s = 0.0;
    int runs = 0;
    int workers = 1;
    std::uint64_t seed = 0;
};

// Wall-clock per (length, mode) cell: `warmups` discarded runs, then
// `runs` measured ones. numRandoms scales as 100 N unless overridden.
std::vector<BenchRow> run_bench_matrix(const std::vector<int>& sizes, const std::vector<EngineMode>& modes,
                                       std::int64_t mcs, int runs, int warmups, std::uint64_t seed,
                                       ThreadPool* pool, std::int64_t num_randoms = 0);

struct TuneRow {
    std::int64_t multiplier = 0;   // numRandoms as a multiple of N
    std::int64_t num_randoms = 0;
    double seconds = 0.0;
};

// maxStep runtime as a function of the batch size.
std::vector<TuneRow> run_tuning_curve(int length, const std::vector<std::int64_t>& multipliers,
                                      std::int64_t mcs, std::uint64_t seed, ThreadPool* pool,
                                      int warmups = 1);

// --- CSV emission --------------------------------------------------------

void write_extinction_csv(const ExtinctionStats& stats, const std::filesystem::path& path);
void write_coexistence_csv(const CoexistenceResult& result, double mobility, int length, std::int64_t mcs,
                           const std::filesystem::path& path);
void write_sweep_csv(const SurvivalTable& table, const SweepSpec& spec, const std::filesystem::path& path);
void write_bench_csv(const std::vector<BenchRow>& rows, std::int64_t mcs, const std::filesystem::path& path);
void write_tuning_csv(const std::vector<TuneRow>& rows, int length, std::int64_t mcs,
                      const std::filesystem::path& path);

std::string engine_mode_name(EngineMode mode);
EngineMode parse_engine_mode(const std::string& name);

}  // namespace escg
