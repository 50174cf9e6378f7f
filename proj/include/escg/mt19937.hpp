#pragma once

#include <array>
#include <cstdint>

namespace escg {

// 32-bit finaliser (MurmurHash3 style): xor-shift / multiply avalanche.
inline std::uint32_t murmur_finalize(std::uint32_t x) {
    x ^= x >> 16;
    x *= 0x85ebca6bu;
    x ^= x >> 13;
    x *= 0xc2b2ae35u;
    x ^= x >> 16;
    return x;
}

// Per-stream seed: finalize(seed XOR stream_id), so distinct streams of the
// same global seed land in decorrelated regions of the generator.
inline std::uint32_t seed_mix(std::uint32_t seed, std::uint32_t stream_id) {
    return murmur_finalize(seed ^ stream_id);
}

// Number of leading draws discarded per stream before any output is used.
// Shorter burn-ins leave visible striping artefacts on the lattice.
inline constexpr std::uint64_t kDefaultBurnIn = 50000;

// MT19937 with the standard constants. Kept self-contained so the state can
// be serialized for bit-exact resume and shared verbatim with any
// data-parallel backend.
class Mt19937 {
public:
    static constexpr int kStateLength = 624;
    static constexpr int kShiftPoint = 397;
    static constexpr std::uint32_t kMatrixA = 0x9908b0dfu;
    static constexpr std::uint32_t kUpperMask = 0x80000000u;
    static constexpr std::uint32_t kLowerMask = 0x7fffffffu;
    static constexpr std::uint32_t kTemperingMaskB = 0x9d2c5680u;
    static constexpr std::uint32_t kTemperingMaskC = 0xefc60000u;
    static constexpr std::uint32_t kInitMultiplier = 1812433253u;

    explicit Mt19937(std::uint32_t seed) { reseed(seed); }

    void reseed(std::uint32_t seed) {
        state_[0] = seed;
        for (int i = 1; i < kStateLength; ++i)
            state_[i] = kInitMultiplier * (state_[i - 1] ^ (state_[i - 1] >> 30)) + static_cast<std::uint32_t>(i);
        index_ = kStateLength;  // force a twist on the first extraction
    }

    std::uint32_t extract() {
        if (index_ >= kStateLength) twist();
        std::uint32_t y = state_[index_++];
        y ^= y >> 11;
        y ^= (y << 7) & kTemperingMaskB;
        y ^= (y << 15) & kTemperingMaskC;
        y ^= y >> 18;
        return y;
    }

    // Uniform float in [0, 1]: extract / (2^32 - 1).
    float next_unit() { return static_cast<float>(extract()) / 4294967295.0f; }

    void discard(std::uint64_t n) {
        for (std::uint64_t i = 0; i < n; ++i) extract();
    }

    const std::array<std::uint32_t, kStateLength>& state() const { return state_; }
    int index() const { return index_; }

    static Mt19937 from_state(const std::array<std::uint32_t, kStateLength>& state, int index) {
        Mt19937 g;
        g.state_ = state;
        g.index_ = index;
        return g;
    }

private:
    Mt19937() = default;

    void twist() {
        for (int i = 0; i < kStateLength; ++i) {
            std::uint32_t y = (state_[i] & kUpperMask) | (state_[(i + 1) % kStateLength] & kLowerMask);
            std::uint32_t next = y >> 1;
            if (y & 1u) next ^= kMatrixA;
            state_[i] = state_[(i + kShiftPoint) % kStateLength] ^ next;
        }
        index_ = 0;
    }

    std::array<std::uint32_t, kStateLength> state_{};
    int index_ = kStateLength;
};

}  // namespace escg
