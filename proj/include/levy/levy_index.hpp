#pragma once

// Levy indices of the form alpha = (p/q)^(l2/l1) and their branch tags.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "levy/rational.hpp"
#include "levy/real.hpp"

namespace levy {

enum class Branch {
    NonIntegerL,  ///< l not a positive integer
    LEqualsOne,   ///< l1 == l2
    IntegerL,     ///< l in {2, 3, ...}, q = k p
};

std::string_view to_string(Branch branch);

struct LevyIndex {
    std::int64_t p = 1;
    std::int64_t q = 2;
    std::int64_t l1 = 1;
    std::int64_t l2 = 1;
    Branch branch = Branch::LEqualsOne;
    double alpha = 0.5;
    double l = 1.0;
    Quad alpha_ext = 0.5;
    Quad l_ext = 1.0;
    /// l as an exact fraction when (q/p)^((l1-l2)/l1) is rational.
    std::optional<Rational> l_exact;

    /// Only meaningful for IntegerL.
    std::int64_t integer_l() const { return l_exact ? l_exact->num() : 0; }

    template <class T>
    T l_value() const;
    template <class T>
    T alpha_value() const;

    std::string str() const;
};

template <>
inline double LevyIndex::l_value<double>() const { return l; }
template <>
inline Quad LevyIndex::l_value<Quad>() const { return l_ext; }
template <>
inline double LevyIndex::alpha_value<double>() const { return alpha; }
template <>
inline Quad LevyIndex::alpha_value<Quad>() const { return alpha_ext; }

/// Classify (p, q, l1, l2). l2/l1 is reduced first. With l1 == l2 the
/// fraction p/q is reduced too; otherwise p and q are kept as given, so
/// (2,8,2,1) stays a distinct IntegerL form with l = 2.
/// Throws DomainError unless 1 <= p < q and l1, l2 >= 1.
LevyIndex resolve_index(std::int64_t p, std::int64_t q, std::int64_t l1, std::int64_t l2);

/// (p0,q0,1,1) followed by (p0^k, q0^k, k, 1) for k = 2, 3, ... until
/// max_forms entries or 64-bit overflow. Every entry resolves to exactly
/// alpha = p0/q0.
std::vector<LevyIndex> enumerate_representations(std::int64_t p0, std::int64_t q0, int max_forms);

/// Recognise a floating alpha as p/q (q <= 64) or as (p/q)^(l2/l1) with
/// l1 <= 4; nullopt when nothing matches to about 1e-14 relative.
std::optional<LevyIndex> approximate_index(double alpha);

}  // namespace levy
