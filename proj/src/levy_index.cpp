#include "levy/levy_index.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "levy/errors.hpp"

namespace levy {

std::string_view to_string(Branch branch) {
    switch (branch) {
        case Branch::NonIntegerL: return "NonIntegerL";
        case Branch::LEqualsOne: return "LEqualsOne";
        case Branch::IntegerL: return "IntegerL";
    }
    return "unknown";
}

std::string LevyIndex::str() const {
    std::ostringstream os;
    os << '(' << p << ',' << q << ',' << l1 << ',' << l2 << ')';
    return os.str();
}

namespace {

// (num/den)^(a/b) exactly, when both parts are perfect b-th powers.
std::optional<Rational> rational_power(std::int64_t num, std::int64_t den, std::int64_t a,
                                       std::int64_t b) {
    const Rational base(num, den);
    const auto rn = exact_root(base.num(), static_cast<unsigned>(b));
    const auto rd = exact_root(base.den(), static_cast<unsigned>(b));
    if (!rn || !rd) return std::nullopt;
    const auto pn = checked_pow(*rn, static_cast<unsigned>(a));
    const auto pd = checked_pow(*rd, static_cast<unsigned>(a));
    if (!pn || !pd) return std::nullopt;
    return Rational(*pn, *pd);
}

}  // namespace

LevyIndex resolve_index(std::int64_t p, std::int64_t q, std::int64_t l1, std::int64_t l2) {
    if (p < 1 || q < 1 || l1 < 1 || l2 < 1) {
        throw DomainError("resolve_index: p, q, l1, l2 must be positive");
    }
    if (p >= q) throw DomainError("resolve_index: need p < q so that alpha < 1");
    const std::int64_t g = std::gcd(l1, l2);
    l1 /= g;
    l2 /= g;

    LevyIndex idx;
    idx.l1 = l1;
    idx.l2 = l2;
    if (l1 == l2) {
        const std::int64_t h = std::gcd(p, q);
        idx.p = p / h;
        idx.q = q / h;
        idx.branch = Branch::LEqualsOne;
        idx.l_exact = Rational(1);
        idx.l = 1.0;
        idx.l_ext = 1;
        idx.alpha_ext = Quad(idx.p) / Quad(idx.q);
        idx.alpha = static_cast<double>(idx.alpha_ext);
        return idx;
    }

    idx.p = p;
    idx.q = q;
    // l = (q/p)^((l1 - l2)/l1); the exponent may be negative when l2 > l1.
    const std::int64_t a = l1 - l2;
    const std::int64_t b = l1;
    const std::int64_t h = std::gcd(a < 0 ? -a : a, b);
    const std::int64_t ea = a / h, eb = b / h;
    idx.l_exact = ea > 0 ? rational_power(q, p, ea, eb) : rational_power(p, q, -ea, eb);

    idx.alpha_ext = powq(Quad(p) / Quad(q), Quad(l2) / Quad(l1));
    if (idx.l_exact) {
        idx.l_ext = idx.l_exact->to_quad();
        idx.alpha_ext = Quad(p) / Quad(q) * idx.l_ext;
    } else {
        idx.l_ext = powq(Quad(q) / Quad(p), Quad(a) / Quad(b));
    }
    idx.l = static_cast<double>(idx.l_ext);
    idx.alpha = static_cast<double>(idx.alpha_ext);

    if (idx.l_exact && idx.l_exact->is_integer() && idx.l_exact->num() >= 2) {
        // Integer l only arises from q = k p with k a perfect power.
        if (q % p != 0) {
            throw DomainError("resolve_index: integer l requires q to be a multiple of p");
        }
        if (q / p <= idx.l_exact->num()) {
            throw DomainError("resolve_index: integer l requires q/p > l");
        }
        idx.branch = Branch::IntegerL;
    } else {
        idx.branch = Branch::NonIntegerL;
    }
    if (!(idx.alpha > 0.0 && idx.alpha < 1.0)) {
        throw DomainError("resolve_index: alpha outside (0, 1)");
    }
    return idx;
}

std::vector<LevyIndex> enumerate_representations(std::int64_t p0, std::int64_t q0, int max_forms) {
    if (p0 < 1 || q0 <= p0) throw DomainError("enumerate_representations: need 0 < p0/q0 < 1");
    const std::int64_t h = std::gcd(p0, q0);
    p0 /= h;
    q0 /= h;
    std::vector<LevyIndex> out;
    if (max_forms < 1) return out;
    out.push_back(resolve_index(p0, q0, 1, 1));
    for (int k = 2; static_cast<int>(out.size()) < max_forms; ++k) {
        const auto P = checked_pow(p0, static_cast<unsigned>(k));
        const auto Q = checked_pow(q0, static_cast<unsigned>(k));
        if (!P || !Q) break;
        // (P/Q)^(1/k) == p0/q0  <=>  P/Q == (p0/q0)^k
        Rational power(1);
        for (int i = 0; i < k; ++i) power *= Rational(p0, q0);
        if (power != Rational(*P, *Q)) break;
        out.push_back(resolve_index(*P, *Q, k, 1));
    }
    return out;
}

std::optional<LevyIndex> approximate_index(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) return std::nullopt;
    constexpr std::int64_t max_q = 64;
    auto match = [](double r, std::int64_t& p, std::int64_t& q) {
        for (q = 2; q <= max_q; ++q) {
            p = std::llround(r * double(q));
            if (p >= 1 && p < q && std::fabs(double(p) / double(q) - r) <= 1e-14 * r) {
                const std::int64_t g = std::gcd(p, q);
                p /= g;
                q /= g;
                return true;
            }
        }
        return false;
    };
    std::int64_t p = 0, q = 0;
    if (match(alpha, p, q)) return resolve_index(p, q, 1, 1);
    for (std::int64_t l1 = 2; l1 <= 4; ++l1) {
        for (std::int64_t l2 = 1; l2 <= 4; ++l2) {
            if (std::gcd(l1, l2) != 1) continue;
            const double r = std::pow(alpha, double(l1) / double(l2));
            if (r <= 0.0 || r >= 1.0) continue;
            if (match(r, p, q)) return resolve_index(p, q, l1, l2);
        }
    }
    return std::nullopt;
}

}  // namespace levy
