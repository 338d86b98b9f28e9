#pragma once

#include <cstdint>
#include <string>

namespace eulertop {

// splitmix64: tiny, fast, and identical on every platform, which keeps
// seeded reports byte-reproducible across compilers.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t below(uint64_t n) { return n ? next() % n : 0; }

    // Independent stream for a named sub-task; deterministic in (seed, tag).
    Rng fork(const std::string& tag) const {
        uint64_t h = 0xcbf29ce484222325ULL ^ state;
        for (char c : tag) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
        return Rng(h);
    }
};

} // namespace eulertop
