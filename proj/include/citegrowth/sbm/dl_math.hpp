#pragma once

#include <cmath>

namespace citegrowth::sbm {

// All factorials and binomials go through lgamma; raw factorials overflow
// long before the sizes we care about.

inline double xlogx(long long x) {
    return x > 0 ? static_cast<double>(x) * std::log(static_cast<double>(x)) : 0.0;
}

inline double log_factorial(long long n) {
    return n > 1 ? std::lgamma(static_cast<double>(n) + 1.0) : 0.0;
}

inline double lbinom(double n, double k) {
    if (k <= 0 || n <= 0 || k > n) return 0.0;
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

/// log of the multiset coefficient C(n + k - 1, k): ways to place k
/// indistinguishable edges into n slots.
inline double lmultiset(double n, long long k) {
    if (k <= 0) return 0.0;
    return lbinom(n + static_cast<double>(k) - 1.0, static_cast<double>(k));
}

}  // namespace citegrowth::sbm
