#pragma once

#include <cstdint>
#include <vector>

#include "escg/errors.hpp"

namespace escg {

// Directed dominance network over species 1..S (0 is the empty site and
// never dominates). Binary entries are 0/1; Rated entries are win
// probabilities in [0, 1].
struct DominanceModel {
    enum class Kind { Binary, Rated };

    int size = 0;
    Kind kind = Kind::Binary;
    std::vector<double> entries;  // flat S x S, row = attacker - 1

    double entry(int a, int b) const { return entries[static_cast<std::size_t>(a - 1) * size + (b - 1)]; }

    // Win probability of a's attack on b. Empty cells (value 0) get rate 0.
    double win_rate(int a, int b) const {
        check_value(a);
        check_value(b);
        if (a == 0 || b == 0) return 0.0;
        return entry(a, b);
    }

    // Binary dominance check; for Rated models true means a nonzero edge exists.
    bool dominates(int a, int b) const { return win_rate(a, b) == 1.0; }

    void validate() const;

private:
    void check_value(int v) const {
        if (v < 0 || v > size) throw EngineError("corrupt lattice value " + std::to_string(v));
    }
};

// Circulant network C(S, K): species i dominates j iff (j - i + S) mod S is in K.
DominanceModel make_circulant(int species, const std::vector<int>& offsets);

}  // namespace escg
