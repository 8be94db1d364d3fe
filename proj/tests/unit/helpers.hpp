#pragma once

#include <cmath>
#include <limits>

inline double rel_err(double got, double want) {
    if (want == 0.0) return std::fabs(got);
    return std::fabs(got - want) / std::fabs(want);
}

// Fixed seed for every randomized property test.
inline constexpr unsigned long long kSeed = 0x5eed1234ULL;
