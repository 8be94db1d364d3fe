#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "levy/real.hpp"

namespace levy {

/// Exact reduced fraction with 64-bit parts. Arithmetic throws DomainError on
/// overflow instead of wrapping.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num);  // NOLINT: implicit from integers is intended
    Rational(std::int64_t num, std::int64_t den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_nonpositive_integer() const { return den_ == 1 && num_ <= 0; }

    /// Nearest binary64 / binary128 value (single rounding of num/den).
    double to_double() const;
    Quad to_quad() const;

    template <class T>
    T to() const;

    std::int64_t floor() const;

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    std::string str() const;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

template <>
inline double Rational::to<double>() const { return to_double(); }
template <>
inline Quad Rational::to<Quad>() const { return to_quad(); }

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Exact integer power with overflow detection; nullopt on overflow.
std::optional<std::int64_t> checked_pow(std::int64_t base, unsigned exponent);

/// Exact integer k-th root when `value` is a perfect k-th power.
std::optional<std::int64_t> exact_root(std::int64_t value, unsigned k);

}  // namespace levy
