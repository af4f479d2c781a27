#pragma once

#include <cstdint>

namespace freqlab {

// Counter-based uniform stream: every draw is a pure function of (seed, index),
// so chunks of a sequence can be produced independently and bit-exactly.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t stream_word(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed ^ 0xa0761d6478bd642fULL) ^
                      (index * 0x9e3779b97f4a7c15ULL));
}

// Uniform double in [0, 1), 53 mantissa bits.
inline double stream_uniform(std::uint64_t seed, std::uint64_t index) {
    return static_cast<double>(stream_word(seed, index) >> 11) * 0x1.0p-53;
}

// Deterministic derivation of sub-seeds (per setting, per component stream, ...).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream_id) {
    return splitmix64(master ^ splitmix64(stream_id + 0x6a09e667f3bcc909ULL));
}

}  // namespace freqlab
