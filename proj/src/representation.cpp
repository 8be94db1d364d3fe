#include "levy/representation.hpp"

#include <cmath>
#include <sstream>

#include "levy/errors.hpp"
#include "levy/special.hpp"

namespace levy {

std::optional<Rational> LinearForm::exact(const std::optional<Rational>& l) const {
    if (l_coeff == Rational(0)) return constant;
    if (!l) return std::nullopt;
    return constant + l_coeff * *l;
}

std::string LinearForm::str() const {
    std::ostringstream os;
    if (l_coeff == Rational(0)) {
        os << constant;
    } else if (constant == Rational(0)) {
        os << l_coeff << "*l";
    } else {
        os << constant << (l_coeff < Rational(0) ? " - " : " + ")
           << (l_coeff < Rational(0) ? -l_coeff : l_coeff) << "*l";
    }
    return os.str();
}

namespace {

using Pair = std::pair<LinearForm, LinearForm>;

LinearForm constant(Rational c) { return {c, Rational(0)}; }
LinearForm affine(Rational c, Rational lc) { return {c, lc}; }

std::vector<Block> general_blocks(std::int64_t p, std::int64_t q) {
    std::vector<Block> blocks;
    Block first;
    first.j = 0;
    first.power = Rational(1);
    for (std::int64_t i = 1; i <= q - 1; ++i) {
        first.upper.push_back({constant(Rational(i, q) - 1), constant(-1)});
    }
    first.lower.push_back({affine(1, -1), affine(0, -1)});
    for (std::int64_t i = 1; i <= p - 1; ++i) {
        first.lower.push_back({affine(Rational(i, p), -1), affine(0, -1)});
    }
    blocks.push_back(std::move(first));

    for (std::int64_t j = 1; j <= q - 1; ++j) {
        Block b;
        b.j = static_cast<int>(j);
        b.power = Rational(j, q);
        for (std::int64_t i = 2; i <= q - 1; ++i) {
            b.upper.push_back({constant(Rational(i, q) - levy_jump(j, q, i)), constant(-1)});
        }
        b.upper.push_back({constant(1 - Rational(j, q)), constant(-1)});
        b.lower.push_back({affine(1, -Rational(j, q)), affine(0, -1)});
        for (std::int64_t i = 1; i <= p - 1; ++i) {
            b.lower.push_back({affine(Rational(i, p), -Rational(j, q)), affine(0, -1)});
        }
        blocks.push_back(std::move(b));
    }
    return blocks;
}

std::vector<Block> unit_l_blocks(std::int64_t p, std::int64_t q) {
    std::vector<Block> blocks;
    for (std::int64_t j = 1; j <= q - 1; ++j) {
        Block b;
        b.j = static_cast<int>(j);
        b.kind = BlockKind::Hypergeometric;
        b.power = Rational(j, q);
        b.argument_sign = (q - p) % 2 == 0 ? 1 : -1;
        for (std::int64_t i = 2; i <= q - 1; ++i) {
            const Rational jump = levy_jump(j, q, i);
            b.gamma_num.push_back(Rational(i, q) - jump);
            b.hyp_lower.push_back(1 - Rational(i, q) + jump);
        }
        for (std::int64_t i = 1; i <= p - 1; ++i) {
            const Rational d(i * q - j * p, p * q);
            b.gamma_den.push_back(d);
            b.hyp_upper.push_back(1 - d);
        }
        blocks.push_back(std::move(b));
    }
    return blocks;
}

std::vector<Block> integer_l_blocks(std::int64_t p, std::int64_t q, std::int64_t l) {
    std::vector<Block> blocks;
    for (std::int64_t j = 1; j <= q - 1; ++j) {
        Block b;
        b.j = static_cast<int>(j);
        b.power = Rational(j, q);
        for (std::int64_t i = 2; i <= q - 1; ++i) {
            b.upper.push_back({constant(Rational(i, q) - levy_jump(j, q, i)), constant(-1)});
        }
        for (std::int64_t r = 1; r <= l - 1; ++r) {
            b.lower.push_back({constant(Rational(r * q - j * l, l * q)), constant(-1)});
        }
        for (std::int64_t i = 1; i <= p - 1; ++i) {
            b.lower.push_back({affine(Rational(i, p), -Rational(j, q)), affine(0, -1)});
        }
        blocks.push_back(std::move(b));
    }
    return blocks;
}

}  // namespace

template <class T>
T Representation::log_scale() const {
    const T p = T(index.p), q = T(index.q), l = index.template l_value<T>();
    const T log_two_pi = num::log(T(2) * num::Traits<T>::pi());
    switch (shape) {
        case Branch::NonIntegerL:
            return num::log(l) + num::log(p * q) / T(2) - (q - p) / T(2) * log_two_pi;
        case Branch::LEqualsOne:
            return num::log(p * q) / T(2) - (q - p) / T(2) * log_two_pi;
        case Branch::IntegerL:
            return num::log(p * q * l) / T(2) - (q + T(1) - p - l) / T(2) * log_two_pi;
    }
    return T(0);
}

template <class T>
T Representation::log_argument_constant() const {
    const T p = T(index.p), q = T(index.q), l = index.template l_value<T>();
    T out = p * l * num::log(p) - q * num::log(q);
    if (shape == Branch::IntegerL) out += l * num::log(l);
    return out;
}

template <class T>
T Representation::argument_exponent() const {
    return T(index.p) * index.template l_value<T>();
}

template double Representation::log_scale<double>() const;
template Quad Representation::log_scale<Quad>() const;
template double Representation::log_argument_constant<double>() const;
template Quad Representation::log_argument_constant<Quad>() const;
template double Representation::argument_exponent<double>() const;
template Quad Representation::argument_exponent<Quad>() const;

double block_margin(const Representation& rep, const Block& block) {
    if (block.kind == BlockKind::Hypergeometric) {
        return double(block.hyp_lower.size()) - double(block.hyp_upper.size());
    }
    const double l = rep.index.l;
    double margin = 0.0;
    for (const auto& [a, A] : block.lower) margin += A.eval(l);
    for (const auto& [a, A] : block.upper) margin -= A.eval(l);
    return margin;
}

Representation build_representation(const LevyIndex& index, Assembly assembly) {
    Representation rep;
    rep.index = index;
    rep.assembly = assembly;
    if (assembly == Assembly::General || index.branch == Branch::NonIntegerL) {
        rep.shape = Branch::NonIntegerL;
        rep.blocks = general_blocks(index.p, index.q);
    } else if (index.branch == Branch::LEqualsOne) {
        rep.shape = Branch::LEqualsOne;
        rep.blocks = unit_l_blocks(index.p, index.q);
    } else {
        rep.shape = Branch::IntegerL;
        rep.blocks = integer_l_blocks(index.p, index.q, index.integer_l());
    }
    for (const auto& block : rep.blocks) {
        if (!(block_margin(rep, block) > -1.0)) {
            throw ConstructionError("assembled series for " + index.str() + ", block j=" +
                                    std::to_string(block.j) + " fails the convergence gate");
        }
    }
    return rep;
}

template <class T>
BasicWrightSpec<T> materialize(const Representation& rep, const Block& block, T argument,
                               T log_scale) {
    if (block.kind != BlockKind::Wright) {
        throw ConstructionError("materialize: block is hypergeometric");
    }
    const T l = rep.index.template l_value<T>();
    auto convert = [&](const std::vector<Pair>& in) {
        std::vector<WrightParam<T>> out;
        for (const auto& [a, A] : in) {
            WrightParam<T> w{a.eval(l), A.eval(l), std::nullopt};
            const auto ea = a.exact(rep.index.l_exact);
            const auto eA = A.exact(rep.index.l_exact);
            if (ea && eA) {
                w.exact = std::make_pair(*ea, *eA);
                w.a = ea->template to<T>();
                w.A = eA->template to<T>();
            }
            out.push_back(w);
        }
        return out;
    };
    return BasicWrightSpec<T>(convert(block.upper), convert(block.lower), argument, log_scale);
}

template WrightSpec materialize(const Representation&, const Block&, double, double);
template WrightSpecExt materialize(const Representation&, const Block&, Quad, Quad);

}  // namespace levy
