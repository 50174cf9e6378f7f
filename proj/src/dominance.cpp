#include "escg/dominance.hpp"

#include <cmath>
#include <string>

namespace escg {

void DominanceModel::validate() const {
    if (size < 1 || size > 64) throw ConfigError("dominance size must be in [1, 64]");
    if (entries.size() != static_cast<std::size_t>(size) * size)
        throw ConfigError("dominance entry count does not match size");
    for (int i = 0; i < size; ++i) {
        if (entry(i + 1, i + 1) != 0.0)
            throw ConfigError("dominance diagonal must be zero (species " + std::to_string(i + 1) + ")");
    }
    for (double v : entries) {
        if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("dominance entries must lie in [0, 1]");
        if (kind == Kind::Binary && v != 0.0 && v != 1.0)
            throw ConfigError("binary dominance entries must be 0 or 1");
    }
}

DominanceModel make_circulant(int species, const std::vector<int>& offsets) {
    if (species < 2) throw ConfigError("circulant network needs at least 2 species");
    if (offsets.empty()) throw ConfigError("circulant offset set must not be empty");
    for (int k : offsets) {
        if (k < 1 || k >= species)
            throw ConfigError("circulant offset " + std::to_string(k) + " out of range [1, " +
                              std::to_string(species - 1) + "]");
    }
    DominanceModel model;
    model.size = species;
    model.kind = DominanceModel::Kind::Binary;
    model.entries.assign(static_cast<std::size_t>(species) * species, 0.0);
    for (int i = 0; i < species; ++i) {
        for (int k : offsets) {
            int j = (i + k) % species;
            model.entries[static_cast<std::size_t>(i) * species + j] = 1.0;
        }
    }
    return model;
}

}  // namespace escg
