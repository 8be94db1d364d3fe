#pragma once

// Truncated power-series evaluation of generalized Wright functions
//
//   pPsiq[z] = sum_n prod_i Gamma(a_i + A_i n) / (prod_j Gamma(b_j + B_j n) n!) z^n
//
// and of hypergeometric pFq with Pochhammer coefficients.
//
// Stopping rule: the sum ends once three consecutive nonzero terms are below
// rel_tol * |partial sum| while the term magnitudes are decreasing, or the
// term cap throws TermCapExceeded. Terms whose denominator gamma sits on a
// pole contribute exactly zero; a numerator pole is an error.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "levy/rational.hpp"
#include "levy/real.hpp"
#include "levy/report.hpp"

namespace levy {

struct SeriesConfig {
    double rel_tol = 1e-13;
    std::uint64_t term_cap = 10000;
    /// Standard-path cancellation ratio above which precision_loss is set.
    double cancellation_threshold = 1e12;
    int consecutive_small = 3;
};

/// One (c, C) gamma parameter pair. `exact` carries the same pair as exact
/// rationals when known; it makes integer-step and pole detection exact.
template <class T>
struct WrightParam {
    T a;
    T A;
    std::optional<std::pair<Rational, Rational>> exact;
};

template <class T>
class BasicWrightSpec {
public:
    using Param = WrightParam<T>;

    /// Throws DomainError if some A_i or B_j is zero and ConvergenceGateError
    /// unless sum(B) - sum(A) > -1.
    BasicWrightSpec(std::vector<Param> upper, std::vector<Param> lower, T z, T log_scale = T(0));

    const std::vector<Param>& upper() const { return upper_; }
    const std::vector<Param>& lower() const { return lower_; }
    T argument() const { return z_; }
    /// Every term is multiplied by exp(log_scale); lets callers fold a huge
    /// constant such as 1/Gamma(1024) into the per-term logarithms.
    T log_scale() const { return log_scale_; }

    T convergence_margin() const;

private:
    std::vector<Param> upper_;
    std::vector<Param> lower_;
    T z_;
    T log_scale_;
};

using WrightSpec = BasicWrightSpec<double>;
using WrightSpecExt = BasicWrightSpec<Quad>;

/// Build a binary64 spec from plain (a, A) pairs.
WrightSpec make_wright(const std::vector<std::pair<double, double>>& upper,
                       const std::vector<std::pair<double, double>>& lower, double z,
                       double log_scale = 0.0);

/// Same spec re-expressed in binary128. Exact annotations carry over, so
/// rational parameters are re-rounded from their exact values.
WrightSpecExt widen(const WrightSpec& spec);

template <class T>
class BasicHypSpec {
public:
    /// Throws DomainError unless p <= q and no lower parameter is a
    /// nonpositive integer.
    BasicHypSpec(std::vector<T> upper, std::vector<T> lower, T z);

    const std::vector<T>& upper() const { return upper_; }
    const std::vector<T>& lower() const { return lower_; }
    T argument() const { return z_; }

private:
    std::vector<T> upper_;
    std::vector<T> lower_;
    T z_;
};

using HypSpec = BasicHypSpec<double>;
using HypSpecExt = BasicHypSpec<Quad>;

/// Series value in the working precision plus diagnostics. Error estimates
/// and magnitudes are stored in the working precision too so that binary128
/// callers keep values below the binary64 range.
template <class T>
struct SeriesSum {
    T value{0};
    T abs_err{0};
    T max_term{0};
    T magnitude_sum{0};
    std::uint64_t terms = 0;
};

/// Sum over sum(B) - sum(A) for a raw parameter list.
template <class T>
T convergence_margin(const std::vector<WrightParam<T>>& upper,
                     const std::vector<WrightParam<T>>& lower);

template <class T>
SeriesSum<T> sum_wright(const BasicWrightSpec<T>& spec, const SeriesConfig& config);

template <class T>
SeriesSum<T> sum_hyp(const BasicHypSpec<T>& spec, const SeriesConfig& config);

/// Standard-path evaluation. Sets precision_loss when the cancellation ratio
/// exceeds config.cancellation_threshold; the caller should then retry with
/// the extended overload.
EvalReport eval_wright(const WrightSpec& spec, const SeriesConfig& config = {});
EvalReport eval_wright(const WrightSpecExt& spec, const SeriesConfig& config = {});

EvalReport eval_hyp(const HypSpec& spec, const SeriesConfig& config = {});
EvalReport eval_hyp(const HypSpecExt& spec, const SeriesConfig& config = {});

/// Standard path first, extended path when the standard one flags
/// precision_loss.
EvalReport eval_wright_escalating(const WrightSpec& spec, const SeriesConfig& config = {});

}  // namespace levy
