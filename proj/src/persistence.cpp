#include "escg/persistence.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace escg {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

std::ofstream open_out(const std::filesystem::path& path, bool append = false) {
    std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    return in;
}

std::int64_t parse_int(const std::string& text, const std::string& what) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw FormatError("invalid integer '" + text + "' for " + what);
    return value;
}

bool parse_bool(const std::string& text, const std::string& what) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw FormatError("invalid boolean '" + text + "' for " + what);
}

const char* bool_str(bool v) { return v ? "true" : "false"; }

}  // namespace

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec;
    return std::string(buf, ptr);
}

double parse_double(const std::string& text, const std::string& what) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw FormatError("invalid number '" + text + "' for " + what);
    return value;
}

void export_grid(const Lattice& lattice, std::int64_t mcs, const std::filesystem::path& path) {
    auto out = open_out(path);
    for (int row = 0; row < lattice.height; ++row) {
        for (int col = 0; col < lattice.length; ++col) {
            if (col) out << ',';
            out << lattice.at(row, col);
        }
        out << '\n';
    }
    out << mcs << '\n';
    if (!out) throw IoError("failed writing " + path.string());
}

std::pair<Lattice, std::int64_t> import_grid(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::vector<std::vector<std::int32_t>> rows;
    std::string line;
    int lineno = 0;
    std::size_t width = 0;
    bool have_mcs = false;
    std::int64_t mcs = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty() && in.peek() == EOF) break;
        auto fields = split_csv(line);
        if (fields.size() == 1 && lineno > 1 && in.peek() == EOF) {
            mcs = parse_int(fields[0], "saved MCS (line " + std::to_string(lineno) + ")");
            have_mcs = true;
            break;
        }
        if (width == 0) width = fields.size();
        if (fields.size() != width)
            throw FormatError(path.string() + ": ragged row at line " + std::to_string(lineno));
        std::vector<std::int32_t> row;
        row.reserve(fields.size());
        for (const auto& f : fields) {
            auto v = parse_int(f, "cell (line " + std::to_string(lineno) + ")");
            if (v < 0) throw FormatError(path.string() + ": negative cell at line " + std::to_string(lineno));
            row.push_back(static_cast<std::int32_t>(v));
        }
        rows.push_back(std::move(row));
    }
    if (!have_mcs)
        throw FormatError(path.string() + ": missing saved-MCS trailer line (line " + std::to_string(lineno) + ")");
    if (rows.empty() || width < 2) throw FormatError(path.string() + ": grid must be at least 2x2");
    if (rows.size() < 2) throw FormatError(path.string() + ": grid must have at least 2 rows");
    Lattice lattice(static_cast<int>(width), static_cast<int>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < width; ++c) lattice.at(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
    return {std::move(lattice), mcs};
}

namespace {

// Keys mirror the CLI flag names; order fixed for stable files.
constexpr const char* kParamKeys[] = {"length",  "height", "mcs",       "neighbourhood", "printFrequency",
                                      "mobility", "species", "flux",     "empty",         "save",
                                      "dominance", "resume", "numRandoms", "maxStep"};

}  // namespace

void export_params(const SimParams& p, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "length," << p.length << '\n';
    out << "height," << p.height << '\n';
    out << "mcs," << p.mcs_limit << '\n';
    out << "neighbourhood," << static_cast<int>(p.neighbourhood) << '\n';
    out << "printFrequency," << p.print_frequency << '\n';
    out << "mobility," << format_double(p.mobility) << '\n';
    out << "species," << p.species << '\n';
    out << "flux," << bool_str(p.flux) << '\n';
    out << "empty," << format_double(p.empty_prob) << '\n';
    out << "save," << bool_str(p.save) << '\n';
    out << "dominance," << bool_str(p.dominance_import) << '\n';
    out << "resume," << bool_str(p.resume) << '\n';
    out << "numRandoms," << p.num_randoms << '\n';
    out << "maxStep," << bool_str(p.max_step) << '\n';
    if (p.seed) out << "seed," << *p.seed << '\n';
    if (!out) throw IoError("failed writing " + path.string());
}

SimParams import_params(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 2)
            throw FormatError(path.string() + ": expected key,value at line " + std::to_string(lineno));
        if (!kv.emplace(fields[0], fields[1]).second)
            throw FormatError(path.string() + ": duplicate key '" + fields[0] + "'");
    }
    for (const char* key : kParamKeys)
        if (!kv.count(key)) throw FormatError(path.string() + ": missing required key '" + key + "'");
    for (const auto& [key, value] : kv) {
        (void)value;
        bool known = key == "seed";
        for (const char* k : kParamKeys) known = known || key == k;
        if (!known) throw FormatError(path.string() + ": unknown key '" + key + "'");
    }

    SimParams p;
    p.length = static_cast<int>(parse_int(kv["length"], "length"));
    p.height = static_cast<int>(parse_int(kv["height"], "height"));
    p.mcs_limit = parse_int(kv["mcs"], "mcs");
    const auto nb = parse_int(kv["neighbourhood"], "neighbourhood");
    if (nb != 4 && nb != 8) throw FormatError(path.string() + ": neighbourhood must be 4 or 8");
    p.neighbourhood = nb == 4 ? Neighbourhood::VonNeumann4 : Neighbourhood::Moore8;
    p.print_frequency = static_cast<int>(parse_int(kv["printFrequency"], "printFrequency"));
    p.mobility = parse_double(kv["mobility"], "mobility");
    p.species = static_cast<int>(parse_int(kv["species"], "species"));
    p.flux = parse_bool(kv["flux"], "flux");
    p.empty_prob = parse_double(kv["empty"], "empty");
    p.save = parse_bool(kv["save"], "save");
    p.dominance_import = parse_bool(kv["dominance"], "dominance");
    p.resume = parse_bool(kv["resume"], "resume");
    p.num_randoms = parse_int(kv["numRandoms"], "numRandoms");
    p.max_step = parse_bool(kv["maxStep"], "maxStep");
    if (kv.count("seed")) {
        const auto& text = kv["seed"];
        std::uint64_t seed = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw FormatError(path.string() + ": invalid seed '" + text + "'");
        p.seed = seed;
    }
    p.validate();
    return p;
}

void export_dominance(const DominanceModel& model, const std::filesystem::path& path) {
    auto out = open_out(path);
    for (int i = 0; i < model.size; ++i) {
        for (int j = 0; j < model.size; ++j) {
            if (j) out << ',';
            const double v = model.entries[static_cast<std::size_t>(i) * model.size + j];
            if (model.kind == DominanceModel::Kind::Binary)
                out << static_cast<int>(v);
            else
                out << format_double(v);
        }
        out << '\n';
    }
    if (!out) throw IoError("failed writing " + path.string());
}

DominanceModel import_dominance(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    bool rated = false;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv(line);
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) {
            const double v = parse_double(f, "dominance entry (line " + std::to_string(lineno) + ")");
            if (v < 0.0 || v > 1.0)
                throw FormatError(path.string() + ": entry out of [0, 1] at line " + std::to_string(lineno));
            if (v != 0.0 && v != 1.0) rated = true;
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw FormatError(path.string() + ": empty dominance matrix");
    const std::size_t size = rows.size();
    for (std::size_t r = 0; r < size; ++r)
        if (rows[r].size() != size)
            throw FormatError(path.string() + ": matrix is not square (row " + std::to_string(r + 1) + ")");

    DominanceModel model;
    model.size = static_cast<int>(size);
    model.kind = rated ? DominanceModel::Kind::Rated : DominanceModel::Kind::Binary;
    model.entries.reserve(size * size);
    for (const auto& row : rows) model.entries.insert(model.entries.end(), row.begin(), row.end());
    model.validate();
    return model;
}

void export_streams(const StreamSet& streams, const std::filesystem::path& path) {
    auto out = open_out(path);
    for (int k = 0; k < streams.count(); ++k) {
        const auto& g = streams.stream(k);
        out << g.index();
        for (auto word : g.state()) out << ',' << word;
        out << '\n';
    }
    if (!out) throw IoError("failed writing " + path.string());
}

std::vector<Mt19937> import_streams(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::vector<Mt19937> streams;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 1 + Mt19937::kStateLength)
            throw FormatError(path.string() + ": bad stream record at line " + std::to_string(lineno));
        const auto index = parse_int(fields[0], "stream index");
        if (index < 0 || index > Mt19937::kStateLength)
            throw FormatError(path.string() + ": stream index out of range at line " + std::to_string(lineno));
        std::array<std::uint32_t, Mt19937::kStateLength> state{};
        for (int i = 0; i < Mt19937::kStateLength; ++i)
            state[i] = static_cast<std::uint32_t>(parse_int(fields[i + 1], "stream word"));
        streams.push_back(Mt19937::from_state(state, static_cast<int>(index)));
    }
    if (streams.empty()) throw FormatError(path.string() + ": no stream records");
    return streams;
}

void export_densities(const DensityTrace& trace, const std::filesystem::path& path, bool append) {
    const bool fresh = !append || !std::filesystem::exists(path);
    auto out = open_out(path, !fresh);
    if (fresh && !trace.counts.empty()) {
        out << "mcs";
        for (std::size_t s = 0; s < trace.counts.front().size(); ++s) out << ",count_" << s;
        out << '\n';
    }
    for (std::size_t r = 0; r < trace.steps.size(); ++r) {
        out << trace.steps[r];
        for (auto c : trace.counts[r]) out << ',' << c;
        out << '\n';
    }
    if (!out) throw IoError("failed writing " + path.string());
}

std::string output_dir_name(const SimParams& p) {
    std::string name;
    name += "L" + std::to_string(p.length);
    name += "_H" + std::to_string(p.height);
    name += "_n" + std::to_string(static_cast<int>(p.neighbourhood));
    name += "_m" + format_double(p.mobility);
    name += "_flux" + std::string(p.flux ? "1" : "0");
    name += "_s" + std::to_string(p.species);
    return name;
}

void save_checkpoint(const std::filesystem::path& dir, const SimParams& params, const Lattice& lattice,
                     const DominanceModel& model, std::int64_t mcs, const StreamSet* streams) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
    export_params(params, dir / "params.csv");
    export_grid(lattice, mcs, dir / "grid.csv");
    export_dominance(model, dir / "dominance.csv");
    if (streams) export_streams(*streams, dir / "streams.csv");
}

Checkpoint load_checkpoint(const std::filesystem::path& dir) {
    Checkpoint cp;
    cp.params = import_params(dir / "params.csv");
    auto [lattice, mcs] = import_grid(dir / "grid.csv");
    cp.lattice = std::move(lattice);
    cp.saved_mcs = mcs;
    cp.dominance = import_dominance(dir / "dominance.csv");
    if (std::filesystem::exists(dir / "streams.csv")) cp.streams = import_streams(dir / "streams.csv");

    if (cp.lattice.length != cp.params.length || cp.lattice.height != cp.params.height)
        throw FormatError(dir.string() + ": grid dimensions do not match params");
    if (cp.dominance.size != cp.params.species)
        throw FormatError(dir.string() + ": dominance size does not match species count");
    for (auto v : cp.lattice.cells)
        if (v > cp.params.species) throw FormatError(dir.string() + ": grid cell exceeds species count");
    if (cp.saved_mcs < 0 || cp.saved_mcs > cp.params.mcs_limit)
        throw FormatError(dir.string() + ": saved MCS outside [0, mcs limit]");
    return cp;
}

}  // namespace escg
