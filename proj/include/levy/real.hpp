#pragma once

// Scalar layer shared by the binary64 ("standard") and binary128 ("extended")
// evaluation paths. Every series kernel is written once against these
// overloads and instantiated for both types.

#include <quadmath.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace levy {

using Quad = __float128;

namespace num {

// ---- binary64 -------------------------------------------------------------

inline double abs(double x) { return std::fabs(x); }
inline double log(double x) { return std::log(x); }
inline double log1p(double x) { return std::log1p(x); }
inline double exp(double x) { return std::exp(x); }
inline double expm1(double x) { return std::expm1(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double pow(double x, double y) { return std::pow(x, y); }
inline double floor(double x) { return std::floor(x); }
inline double round(double x) { return std::round(x); }
inline double fmod(double x, double y) { return std::fmod(x, y); }
inline double frexp(double x, int* e) { return std::frexp(x, e); }
inline double ldexp(double x, int e) { return std::ldexp(x, e); }
inline bool isfinite(double x) { return std::isfinite(x); }
inline double tgamma_pos(double x) { return std::tgamma(x); }
inline double lgamma_pos(double x) { return std::lgamma(x); }

// ---- binary128 ------------------------------------------------------------

inline Quad abs(Quad x) { return fabsq(x); }
inline Quad log(Quad x) { return logq(x); }
inline Quad log1p(Quad x) { return log1pq(x); }
inline Quad exp(Quad x) { return expq(x); }
inline Quad expm1(Quad x) { return expm1q(x); }
inline Quad sqrt(Quad x) { return sqrtq(x); }
inline Quad sin(Quad x) { return sinq(x); }
inline Quad cos(Quad x) { return cosq(x); }
inline Quad pow(Quad x, Quad y) { return powq(x, y); }
inline Quad floor(Quad x) { return floorq(x); }
inline Quad round(Quad x) { return roundq(x); }
inline Quad fmod(Quad x, Quad y) { return fmodq(x, y); }
inline Quad frexp(Quad x, int* e) { return frexpq(x, e); }
inline Quad ldexp(Quad x, int e) { return ldexpq(x, e); }
inline bool isfinite(Quad x) { return finiteq(x) != 0; }
inline Quad tgamma_pos(Quad x) { return tgammaq(x); }
inline Quad lgamma_pos(Quad x) { return lgammaq(x); }

// ---- per-type constants ---------------------------------------------------

template <class T>
struct Traits;

template <>
struct Traits<double> {
    static constexpr double epsilon() { return std::numeric_limits<double>::epsilon(); }
    static double pi() { return 3.141592653589793238462643383279502884; }
    static double ln2() { return 0.693147180559945309417232121458176568; }
    /// Largest x with Gamma(x) finite.
    static double gamma_overflow() { return 171.6243769563027; }
    static double infinity() { return std::numeric_limits<double>::infinity(); }
};

template <>
struct Traits<Quad> {
    // quadmath's constant macros use the Q literal suffix, which strict
    // -std=c++20 rejects.
    static Quad epsilon() { return Quad(std::ldexp(1.0, -112)); }
    static Quad pi() {
        static const Quad value = acosq(Quad(-1));
        return value;
    }
    static Quad ln2() {
        static const Quad value = logq(Quad(2));
        return value;
    }
    static Quad gamma_overflow() { return Quad(1750); }
    static Quad infinity() { return Quad(std::numeric_limits<double>::infinity()); }
};

/// sin(pi x) with exact argument reduction, so that the result is exactly
/// zero at integers and accurate near them.
template <class T>
T sinpi(T x) {
    const T pi = Traits<T>::pi();
    T r = num::fmod(x, T(2));  // exact, r in (-2, 2)
    if (r < 0) r += T(2);      // r in [0, 2)
    T sign = T(1);
    if (r >= T(1)) {
        r -= T(1);
        sign = T(-1);
    }
    // r in [0, 1): sin(pi r) = sin(pi (1 - r))
    if (r > T(0.5)) r = T(1) - r;
    if (r == T(0)) return T(0);
    return sign * num::sin(pi * r);
}

template <class T>
bool is_nonpositive_integer(T x) {
    return x <= T(0) && num::floor(x) == x;
}

inline std::string to_string(Quad x, int digits = 36) {
    char buf[128];
    quadmath_snprintf(buf, sizeof buf, "%.*Qg", digits, x);
    return buf;
}

}  // namespace num

using num::is_nonpositive_integer;

/// Neumaier-compensated running sum.
template <class T>
class CompensatedSum {
public:
    void add(T x) {
        const T t = sum_ + x;
        if (num::abs(sum_) >= num::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
        abs_sum_ += num::abs(x);
    }
    T value() const { return sum_ + comp_; }
    /// Sum of the magnitudes of everything added.
    T magnitude() const { return abs_sum_; }

private:
    T sum_{0};
    T comp_{0};
    T abs_sum_{0};
};

}  // namespace levy
