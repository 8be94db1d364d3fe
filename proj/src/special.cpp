#include "levy/special.hpp"

#include <cmath>
#include <string>

namespace levy {

Rational levy_jump(std::int64_t j, std::int64_t q, std::int64_t n) {
    if (q < 2 || j < 1 || j > q - 1) {
        throw DomainError("levy_jump: need 1 <= j <= q-1, got j=" + std::to_string(j) +
                          ", q=" + std::to_string(q));
    }
    if (n < 1) throw DomainError("levy_jump: n must be positive");
    return j < n ? Rational(j, q) : Rational(j + 1, q);
}

double gauss_legendre_check(int m, double z) {
    if (m < 1) throw DomainError("gauss_legendre_check: m must be positive");
    if (m == 1) return 0.0;
    const double mz = m * z;
    const SignedLog<double> lhs = log_gamma(mz);  // throws on a pole
    const double two_pi = 2.0 * num::Traits<double>::pi();
    double rhs_log = 0.5 * (1 - m) * std::log(two_pi) + (mz - 0.5) * std::log(double(m));
    int rhs_sign = 1;
    for (int r = 0; r < m; ++r) {
        const SignedLog<double> g = log_gamma(z + double(r) / m);
        rhs_log += g.log_magnitude;
        rhs_sign *= g.sign;
    }
    if (rhs_sign != lhs.sign) return 2.0;
    return std::fabs(std::expm1(rhs_log - lhs.log_magnitude));
}

}  // namespace levy
