#include "levy/rational.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "levy/errors.hpp"

namespace levy {

namespace {

using Wide = __int128;

std::int64_t narrow(Wide v) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min()) {
        throw DomainError("rational arithmetic overflow");
    }
    return static_cast<std::int64_t>(v);
}

Rational make_reduced(Wide num, Wide den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Wide a = num < 0 ? -num : num;
    Wide b = den;
    while (b != 0) {
        const Wide t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    return Rational(narrow(num), narrow(den));
}

}  // namespace

Rational::Rational(std::int64_t num) : num_(num), den_(1) {}

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    if (den < 0) {
        if (num == std::numeric_limits<std::int64_t>::min() ||
            den == std::numeric_limits<std::int64_t>::min()) {
            throw DomainError("rational arithmetic overflow");
        }
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = g > 1 ? num / g : num;
    den_ = g > 1 ? den / g : den;
}

double Rational::to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
}

Quad Rational::to_quad() const { return static_cast<Quad>(num_) / static_cast<Quad>(den_); }

std::int64_t Rational::floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

Rational Rational::operator-() const { return make_reduced(-Wide(num_), den_); }

Rational operator+(const Rational& a, const Rational& b) {
    return make_reduced(Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return make_reduced(Wide(a.num_) * b.den_ - Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return make_reduced(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw DomainError("rational division by zero");
    return make_reduced(Wide(a.num_) * b.den_, Wide(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return Wide(a.num_) * b.den_ <=> Wide(b.num_) * a.den_;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::optional<std::int64_t> checked_pow(std::int64_t base, unsigned exponent) {
    Wide acc = 1;
    for (unsigned i = 0; i < exponent; ++i) {
        acc *= base;
        if (acc > std::numeric_limits<std::int64_t>::max() ||
            acc < std::numeric_limits<std::int64_t>::min()) {
            return std::nullopt;
        }
    }
    return static_cast<std::int64_t>(acc);
}

std::optional<std::int64_t> exact_root(std::int64_t value, unsigned k) {
    if (k == 0 || value < 0) return std::nullopt;
    if (k == 1 || value <= 1) return value;
    const auto guess = static_cast<std::int64_t>(
        std::llround(std::pow(static_cast<double>(value), 1.0 / k)));
    for (std::int64_t r = std::max<std::int64_t>(guess - 1, 1); r <= guess + 1; ++r) {
        const auto p = checked_pow(r, k);
        if (p && *p == value) return r;
    }
    return std::nullopt;
}

}  // namespace levy
