#pragma once

#include <cstdint>
#include <functional>
#include <random>

namespace bchardy {

// Run fn(i) for i in [0, n). Honors the BCHARDY_THREADS env var as a cap on
// worker count. Each index writes its own outputs, so execution order does
// not affect results.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

std::size_t thread_budget();

// Deterministic uniform draws layered on mt19937_64 raw output (the
// std:: distributions are implementation-defined, these are not).
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace bchardy
