#pragma once

// Gamma-function machinery used by every series in the library.
//
// All functions are templates over the working scalar (double or Quad) and
// are pure, so they may be called concurrently.

#include <cstdint>

#include "levy/errors.hpp"
#include "levy/rational.hpp"
#include "levy/real.hpp"

namespace levy {

/// log|Gamma(x)| together with the sign of Gamma(x).
template <class T>
struct SignedLog {
    T log_magnitude;
    int sign;
};

/// log|Gamma(x)| and sign. Uses the reflection formula for x < 1/2.
/// Throws PoleError at x in {0, -1, -2, ...}.
template <class T>
SignedLog<T> log_gamma(T x) {
    if (is_nonpositive_integer(x)) {
        throw PoleError("log_gamma: pole at nonpositive integer");
    }
    if (x >= T(0.5)) return {num::lgamma_pos(x), 1};
    // Gamma(x) Gamma(1-x) = pi / sin(pi x)
    const T s = num::sinpi(x);
    const SignedLog<T> reflected = log_gamma(T(1) - x);
    return {num::log(num::Traits<T>::pi()) - num::log(num::abs(s)) - reflected.log_magnitude,
            s < 0 ? -1 : 1};
}

/// Gamma(x). Throws PoleError at the poles; overflows to +-inf past the
/// representable range.
template <class T>
T gamma(T x) {
    if (is_nonpositive_integer(x)) {
        throw PoleError("gamma: pole at nonpositive integer");
    }
    if (x >= T(0.5)) return num::tgamma_pos(x);
    const T one_minus = T(1) - x;
    if (one_minus < num::Traits<T>::gamma_overflow()) {
        return num::Traits<T>::pi() / (num::sinpi(x) * num::tgamma_pos(one_minus));
    }
    const SignedLog<T> lg = log_gamma(x);
    return T(lg.sign) * num::exp(lg.log_magnitude);
}

/// 1/Gamma(x); total, exactly zero at the poles.
template <class T>
T recip_gamma(T x) {
    if (is_nonpositive_integer(x)) return T(0);
    if (x >= T(0.5)) {
        if (x < num::Traits<T>::gamma_overflow()) return T(1) / num::tgamma_pos(x);
        return num::exp(-num::lgamma_pos(x));
    }
    const T one_minus = T(1) - x;
    if (one_minus < num::Traits<T>::gamma_overflow()) {
        return num::sinpi(x) * num::tgamma_pos(one_minus) / num::Traits<T>::pi();
    }
    const SignedLog<T> lg = log_gamma(x);
    return T(lg.sign) * num::exp(-lg.log_magnitude);
}

/// Pochhammer symbol (b)_k by the product b(b+1)...(b+k-1).
template <class T>
T pochhammer_product(T b, std::uint64_t k) {
    T acc = T(1);
    for (std::uint64_t i = 0; i < k; ++i) acc *= b + T(i);
    return acc;
}

/// Pochhammer symbol (b)_k by Gamma(b+k)/Gamma(b). Requires both gammas to
/// exist; throws PoleError otherwise.
template <class T>
T pochhammer_gamma_ratio(T b, std::uint64_t k) {
    const SignedLog<T> top = log_gamma(b + T(k));
    const SignedLog<T> bottom = log_gamma(b);
    return T(top.sign * bottom.sign) * num::exp(top.log_magnitude - bottom.log_magnitude);
}

/// (b)_k; (b)_0 = 1. Product form up to `product_limit` factors and whenever
/// the product crosses zero, gamma-ratio form beyond.
template <class T>
T pochhammer(T b, std::uint64_t k) {
    constexpr std::uint64_t product_limit = 64;
    if (k <= product_limit) return pochhammer_product(b, k);
    // A factor b+i vanishes for some i < k: the product is exactly zero.
    if (is_nonpositive_integer(b) && -b < T(k)) return T(0);
    if (is_nonpositive_integer(b + T(k))) return pochhammer_product(b, k);
    return pochhammer_gamma_ratio(b, k);
}

/// Gamma(beta + 1 - v) through (-1)^v Gamma(beta + 1) / (-beta)_v.
/// Throws PoleError when the left-hand side sits on a pole or the
/// Pochhammer denominator vanishes.
template <class T>
T negated_gamma_ratio(T beta, std::uint64_t v) {
    if (is_nonpositive_integer(beta + T(1) - T(v))) {
        throw PoleError("negated_gamma_ratio: Gamma(beta+1-v) is on a pole");
    }
    if (is_nonpositive_integer(beta + T(1))) {
        throw PoleError("negated_gamma_ratio: Gamma(beta+1) is on a pole");
    }
    const T denominator = pochhammer(-beta, v);
    if (denominator == T(0)) {
        throw PoleError("negated_gamma_ratio: (-beta)_v vanishes");
    }
    const T sign = (v % 2 == 0) ? T(1) : T(-1);
    return sign * gamma(beta + T(1)) / denominator;
}

/// Levy jump function [j/q]_n: j/q when j < n, (j+1)/q when j >= n.
/// Throws DomainError unless 1 <= j <= q-1.
Rational levy_jump(std::int64_t j, std::int64_t q, std::int64_t n);

/// Relative residual of the Gauss-Legendre multiplication formula
///   Gamma(m z) = (2 pi)^((1-m)/2) m^(m z - 1/2) prod_{r<m} Gamma(z + r/m),
/// both sides evaluated through log_gamma. Test helper.
double gauss_legendre_check(int m, double z);

}  // namespace levy
