#pragma once

// Residue-series representation of f_alpha for one resolved index:
//
//   f(x) = (scale / x) * sum_j z^(power_j) * S_j(sign_j * z),   z = K / x^(p l)
//
// Each S_j is either a Wright series or (l = 1) a gamma-weighted pFq.
// Parameters are affine in l with exact rational coefficients, so they stay
// exact whenever l is rational.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "levy/levy_index.hpp"
#include "levy/rational.hpp"
#include "levy/wright.hpp"

namespace levy {

/// constant + l_coeff * l
struct LinearForm {
    Rational constant;
    Rational l_coeff;

    template <class T>
    T eval(T l) const {
        return constant.template to<T>() + l_coeff.template to<T>() * l;
    }
    std::optional<Rational> exact(const std::optional<Rational>& l) const;
    std::string str() const;
};

enum class BlockKind { Wright, Hypergeometric };

struct Block {
    int j = 0;
    Rational power;  ///< exponent of z in the block prefactor
    int argument_sign = -1;
    BlockKind kind = BlockKind::Wright;

    // Wright blocks
    std::vector<std::pair<LinearForm, LinearForm>> upper;
    std::vector<std::pair<LinearForm, LinearForm>> lower;

    // Hypergeometric blocks: prod Gamma(gamma_num) / prod Gamma(gamma_den) * pFq
    std::vector<Rational> hyp_upper;
    std::vector<Rational> hyp_lower;
    std::vector<Rational> gamma_num;
    std::vector<Rational> gamma_den;
};

enum class Assembly {
    Auto,     ///< the branch's own display
    General,  ///< always the non-integer-l assembly, even for l = 1 or integer l
};

struct Representation {
    LevyIndex index;
    Assembly assembly = Assembly::Auto;
    /// Branch whose display produced the blocks.
    Branch shape = Branch::LEqualsOne;
    std::vector<Block> blocks;

    /// log of the scale constant in front of 1/x.
    template <class T>
    T log_scale() const;
    /// log K with z = K x^(-p l).
    template <class T>
    T log_argument_constant() const;
    /// p l
    template <class T>
    T argument_exponent() const;
};

/// Throws ConstructionError if some assembled series fails its convergence
/// gate (impossible for a valid index).
Representation build_representation(const LevyIndex& index, Assembly assembly = Assembly::Auto);

/// Wright spec of a block at series argument `argument`, with log_scale
/// added to every term.
template <class T>
BasicWrightSpec<T> materialize(const Representation& rep, const Block& block, T argument,
                               T log_scale);

/// Sum of B_j minus sum of A_i. Hypergeometric blocks count as unit-step
/// Wright series, giving (q-2) - (p-1).
double block_margin(const Representation& rep, const Block& block);

}  // namespace levy
