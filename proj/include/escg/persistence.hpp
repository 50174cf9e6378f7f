#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "escg/dominance.hpp"
#include "escg/engine.hpp"
#include "escg/lattice.hpp"
#include "escg/params.hpp"
#include "escg/random_batch.hpp"

namespace escg {

// Shortest round-trip decimal for doubles ("3e-05", "0.1").
std::string format_double(double value);
double parse_double(const std::string& text, const std::string& what);

// grid.csv: H rows of L comma-separated integers, then one trailer line
// holding the last saved MCS.
void export_grid(const Lattice& lattice, std::int64_t mcs, const std::filesystem::path& path);
std::pair<Lattice, std::int64_t> import_grid(const std::filesystem::path& path);

// params.csv: one key,value row per CLI parameter.
void export_params(const SimParams& params, const std::filesystem::path& path);
SimParams import_params(const std::filesystem::path& path);

// dominance.csv: square S x S matrix; any fractional entry makes the model
// Rated, otherwise it loads as Binary.
void export_dominance(const DominanceModel& model, const std::filesystem::path& path);
DominanceModel import_dominance(const std::filesystem::path& path);

// streams.csv: one row per generator stream (index then 624 state words),
// written so serial resumes can be bit-exact.
void export_streams(const StreamSet& streams, const std::filesystem::path& path);
std::vector<Mt19937> import_streams(const std::filesystem::path& path);

// densities.csv rows: mcs,count_0,...,count_S. Appends when the file
// already holds records (resumed run).
void export_densities(const DensityTrace& trace, const std::filesystem::path& path, bool append = false);

// Deterministic directory name: L200_H200_n4_m3e-05_flux1_s3.
std::string output_dir_name(const SimParams& params);

struct Checkpoint {
    SimParams params;
    Lattice lattice;
    DominanceModel dominance;
    std::int64_t saved_mcs = 0;
    std::vector<Mt19937> streams;  // empty when streams.csv is absent
};

// Write params/grid/dominance (and stream states when given) into dir.
void save_checkpoint(const std::filesystem::path& dir, const SimParams& params, const Lattice& lattice,
                     const DominanceModel& model, std::int64_t mcs, const StreamSet* streams = nullptr);

// Load and cross-validate a checkpoint directory.
Checkpoint load_checkpoint(const std::filesystem::path& dir);

}  // namespace escg
