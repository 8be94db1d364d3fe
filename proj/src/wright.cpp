#include "levy/wright.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "levy/errors.hpp"
#include "levy/special.hpp"

namespace levy {

std::string_view to_string(PrecisionPath path) {
    switch (path) {
        case PrecisionPath::Standard: return "standard";
        case PrecisionPath::Extended: return "extended";
        case PrecisionPath::Oracle: return "oracle";
    }
    return "unknown";
}

double EvalReport::relative_error_estimate() const {
    if (value == 0.0) return abs_err_estimate == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return abs_err_estimate / std::fabs(value);
}

// ---------------------------------------------------------------------------
// Specs

template <class T>
T convergence_margin(const std::vector<WrightParam<T>>& upper,
                     const std::vector<WrightParam<T>>& lower) {
    CompensatedSum<T> margin;
    for (const auto& b : lower) margin.add(b.A);
    for (const auto& a : upper) margin.add(-a.A);
    return margin.value();
}

template <class T>
BasicWrightSpec<T>::BasicWrightSpec(std::vector<Param> upper, std::vector<Param> lower, T z,
                                    T log_scale)
    : upper_(std::move(upper)), lower_(std::move(lower)), z_(z), log_scale_(log_scale) {
    for (const auto& p : upper_) {
        if (p.A == T(0)) throw DomainError("Wright spec: upper coefficient A_i is zero");
    }
    for (const auto& p : lower_) {
        if (p.A == T(0)) throw DomainError("Wright spec: lower coefficient B_j is zero");
    }
    if (!num::isfinite(z_)) throw DomainError("Wright spec: argument is not finite");
    if (!(convergence_margin() > T(-1))) {
        throw ConvergenceGateError("Wright spec: sum(B) - sum(A) must exceed -1");
    }
}

template <class T>
T BasicWrightSpec<T>::convergence_margin() const {
    return levy::convergence_margin(upper_, lower_);
}

WrightSpec make_wright(const std::vector<std::pair<double, double>>& upper,
                       const std::vector<std::pair<double, double>>& lower, double z,
                       double log_scale) {
    std::vector<WrightParam<double>> up, lo;
    for (auto [a, A] : upper) up.push_back({a, A, std::nullopt});
    for (auto [b, B] : lower) lo.push_back({b, B, std::nullopt});
    return WrightSpec(std::move(up), std::move(lo), z, log_scale);
}

WrightSpecExt widen(const WrightSpec& spec) {
    auto convert = [](const std::vector<WrightParam<double>>& in) {
        std::vector<WrightParam<Quad>> out;
        for (const auto& p : in) {
            if (p.exact) {
                out.push_back({p.exact->first.to_quad(), p.exact->second.to_quad(), p.exact});
            } else {
                out.push_back({Quad(p.a), Quad(p.A), std::nullopt});
            }
        }
        return out;
    };
    return WrightSpecExt(convert(spec.upper()), convert(spec.lower()), Quad(spec.argument()),
                         Quad(spec.log_scale()));
}

template <class T>
BasicHypSpec<T>::BasicHypSpec(std::vector<T> upper, std::vector<T> lower, T z)
    : upper_(std::move(upper)), lower_(std::move(lower)), z_(z) {
    if (upper_.size() > lower_.size()) {
        throw DomainError("pFq spec: need p <= q for an everywhere convergent series");
    }
    for (T b : lower_) {
        if (is_nonpositive_integer(b)) {
            throw DomainError("pFq spec: lower parameter is a nonpositive integer");
        }
    }
    if (!num::isfinite(z_)) throw DomainError("pFq spec: argument is not finite");
}

// ---------------------------------------------------------------------------
// Shared summation driver

namespace {

/// Scaled magnitude m * 2^e with |m| in [0.5, 1) keeps recurrences clear of
/// binary64 overflow and underflow.
template <class T>
struct Scaled {
    T mantissa{1};
    long exponent = 0;

    void normalize() {
        if (mantissa == T(0)) return;
        int e = 0;
        mantissa = num::frexp(mantissa, &e);
        exponent += e;
    }
    static Scaled from_log(T log_magnitude, int sign) {
        const T ln2 = num::Traits<T>::ln2();
        const T k = num::floor(log_magnitude / ln2);
        Scaled s;
        s.mantissa = T(sign) * num::exp(log_magnitude - k * ln2);
        s.exponent = static_cast<long>(k);
        s.normalize();
        return s;
    }
    T value() const {
        if (mantissa == T(0)) return T(0);
        if (exponent > std::numeric_limits<int>::max()) return mantissa * num::Traits<T>::infinity();
        if (exponent < std::numeric_limits<int>::min()) return T(0);
        return num::ldexp(mantissa, static_cast<int>(exponent));
    }
};

/// One term as produced by a term generator.
template <class T>
struct Term {
    T value{0};
    T rel_err{0};       ///< estimated relative rounding error of `value`
    bool structural_zero = false;
    bool terminal = false;  ///< this and every later term vanish identically
};

/// Runs the stopping rule over a generator `next(n)` returning Term<T>.
template <class T, class Generator>
SeriesSum<T> drive(Generator&& next, const SeriesConfig& config) {
    const T unit = num::Traits<T>::epsilon() / T(2);
    const T rel_tol = T(config.rel_tol);
    CompensatedSum<T> sum;
    T rounding{0};
    T max_term{0};
    T last_nonzero{0};
    bool have_nonzero = false;
    int streak = 0;
    std::uint64_t n = 0;
    SeriesSum<T> out;
    for (;; ++n) {
        if (n >= config.term_cap) {
            throw TermCapExceeded("series did not converge within " +
                                  std::to_string(config.term_cap) + " terms");
        }
        const Term<T> t = next(n);
        if (t.terminal) {
            out.value = sum.value();
            out.terms = n;
            out.max_term = max_term;
            out.magnitude_sum = sum.magnitude();
            out.abs_err = rounding + T(2) * unit * sum.magnitude();
            return out;
        }
        if (!num::isfinite(t.value)) {
            throw AccuracyError("series term overflowed at n = " + std::to_string(n));
        }
        if (t.structural_zero) continue;
        const T mag = num::abs(t.value);
        sum.add(t.value);
        rounding += mag * t.rel_err;
        if (mag > max_term) max_term = mag;
        const bool small = mag <= rel_tol * num::abs(sum.value());
        const bool decreasing = !have_nonzero || mag < last_nonzero || mag == T(0);
        streak = (small && decreasing) ? streak + 1 : 0;
        if (mag != T(0)) {
            last_nonzero = mag;
            have_nonzero = true;
        }
        if (streak >= config.consecutive_small) break;
    }
    // First omitted term bounds the truncation error; inflate by the local
    // decay ratio when the tail is not yet collapsing.
    T omitted{0};
    for (std::uint64_t k = n + 1; k < n + 4; ++k) {
        const Term<T> t = next(k);
        if (t.terminal) break;
        if (t.structural_zero) continue;
        omitted = num::abs(t.value);
        break;
    }
    T truncation = omitted;
    if (last_nonzero > T(0) && omitted > T(0)) {
        const T ratio = omitted / last_nonzero;
        truncation = ratio < T(0.9) ? omitted / (T(1) - ratio)
                                    : T(10) * (omitted > last_nonzero ? omitted : last_nonzero);
    }
    out.value = sum.value();
    out.terms = n + 1;
    out.max_term = max_term;
    out.magnitude_sum = sum.magnitude();
    out.abs_err = truncation + rounding + T(2) * unit * sum.magnitude();
    return out;
}

template <class T>
struct Factor {
    T c;
    T C;
    int side;  // +1 numerator, -1 denominator
    bool integer_step = false;
    long step = 0;
    std::optional<std::pair<Rational, Rational>> exact;

    T arg(std::uint64_t n) const {
        if (exact) {
            return (exact->first + exact->second * Rational(static_cast<std::int64_t>(n))).template to<T>();
        }
        return c + C * T(n);
    }
    bool pole(std::uint64_t n) const {
        if (exact) {
            return (exact->first + exact->second * Rational(static_cast<std::int64_t>(n)))
                .is_nonpositive_integer();
        }
        return is_nonpositive_integer(c + C * T(n));
    }
    /// Poles at every n' >= n: an integer argument walking downwards.
    bool pole_forever(std::uint64_t n) const {
        if (!integer_step || step >= 0 || !pole(n)) return false;
        if (exact) return exact->first.is_integer();
        return num::floor(c) == c;
    }
};

template <class T>
Factor<T> classify(const WrightParam<T>& p, int side) {
    Factor<T> f{p.a, p.A, side, false, 0, p.exact};
    constexpr long max_step = 64;
    if (p.exact) {
        const Rational& C = p.exact->second;
        if (C.is_integer() && C.num() != 0 && std::abs(C.num()) <= max_step) {
            f.integer_step = true;
            f.step = static_cast<long>(C.num());
        }
    } else if (num::floor(p.A) == p.A && num::abs(p.A) <= T(max_step)) {
        f.integer_step = true;
        f.step = static_cast<long>(static_cast<double>(p.A));
    }
    return f;
}

template <class T>
class WrightTerms {
public:
    WrightTerms(const BasicWrightSpec<T>& spec) : z_(spec.argument()), log_scale_(spec.log_scale()) {
        for (const auto& p : spec.upper()) add(classify(p, +1));
        for (const auto& p : spec.lower()) add(classify(p, -1));
        log_abs_z_ = z_ == T(0) ? T(0) : num::log(num::abs(z_));
    }

    Term<T> operator()(std::uint64_t n) {
        const T unit = num::Traits<T>::epsilon() / T(2);
        if (z_ == T(0) && n > 0) return {T(0), T(0), false, true};
        for (const auto& f : stepped_) {
            if (f.side < 0 && f.pole_forever(n)) return {T(0), T(0), false, true};
        }
        bool zero = false;
        for (const auto* group : {&stepped_, &logged_}) {
            for (const auto& f : *group) {
                if (!f.pole(n)) continue;
                if (f.side > 0) {
                    throw PoleError("Wright series: numerator gamma on a pole at n = " +
                                    std::to_string(n));
                }
                zero = true;
            }
        }
        if (zero) {
            valid_ = false;
            return {T(0), T(0), true, false};
        }

        // Integer-step part: recurrence from n-1, or a direct restart.
        if (!valid_ || n != cached_n_ + 1) {
            T log_mag = T(0), spread = T(0);
            int sign = 1;
            for (const auto& f : stepped_) {
                const SignedLog<T> g = log_gamma(f.arg(n));
                log_mag += T(f.side) * g.log_magnitude;
                spread += num::abs(g.log_magnitude);
                sign *= g.sign;
            }
            if (n > 0) {
                const T lf = num::lgamma_pos(T(n + 1));
                log_mag += T(n) * log_abs_z_ - lf;
                spread += num::abs(T(n) * log_abs_z_) + lf;
                if (z_ < T(0) && n % 2 == 1) sign = -sign;
            }
            recur_ = Scaled<T>::from_log(log_mag, sign);
            recur_err_ = unit * (T(4) + T(2) * spread);
            valid_ = true;
        } else {
            T ratio = z_ / T(n);
            long ops = 2;
            for (const auto& f : stepped_) {
                const T prev = f.arg(n - 1);
                T factor = T(1);
                if (f.step > 0) {
                    for (long r = 0; r < f.step; ++r) factor *= prev + T(r);
                } else {
                    T den = T(1);
                    for (long r = 1; r <= -f.step; ++r) den *= prev - T(r);
                    factor = T(1) / den;
                }
                ratio = f.side > 0 ? ratio * factor : ratio / factor;
                ops += std::abs(f.step) + 1;
            }
            recur_.mantissa *= ratio;
            recur_.normalize();
            recur_err_ += unit * T(ops);
        }
        cached_n_ = n;

        // Non-integer steps: fresh log-gamma per term.
        T log_mag = log_scale_, spread = num::abs(log_scale_);
        int sign = 1;
        for (const auto& f : logged_) {
            const SignedLog<T> g = log_gamma(f.arg(n));
            log_mag += T(f.side) * g.log_magnitude;
            spread += num::abs(g.log_magnitude);
            sign *= g.sign;
        }
        Scaled<T> logged = Scaled<T>::from_log(log_mag, sign);
        Scaled<T> term;
        term.mantissa = recur_.mantissa * logged.mantissa;
        term.exponent = recur_.exponent + logged.exponent;
        term.normalize();
        return {term.value(), recur_err_ + unit * (T(3) + T(2) * spread), false, false};
    }

private:
    void add(Factor<T> f) { (f.integer_step ? stepped_ : logged_).push_back(std::move(f)); }

    std::vector<Factor<T>> stepped_;
    std::vector<Factor<T>> logged_;
    T z_;
    T log_scale_;
    T log_abs_z_{0};
    Scaled<T> recur_;
    T recur_err_{0};
    bool valid_ = false;
    std::uint64_t cached_n_ = 0;
};

template <class T>
class HypTerms {
public:
    explicit HypTerms(const BasicHypSpec<T>& spec) : spec_(spec) {}

    Term<T> operator()(std::uint64_t n) {
        const T unit = num::Traits<T>::epsilon() / T(2);
        if (n == 0) {
            current_ = Scaled<T>{};
            current_.normalize();
            err_ = T(0);
            cached_n_ = 0;
            return {current_.value(), T(0), false, false};
        }
        if (n != cached_n_ + 1) {
            // Replay the recurrence; only reached by out-of-order access.
            (*this)(0);
            for (std::uint64_t k = 1; k < n; ++k) (*this)(k);
        }
        if (terminated_) return {T(0), T(0), false, true};
        const T m = T(n - 1);
        T ratio = spec_.argument() / T(n);
        for (T a : spec_.upper()) {
            if (a + m == T(0)) {
                terminated_ = true;
                return {T(0), T(0), false, true};
            }
            ratio *= a + m;
        }
        for (T b : spec_.lower()) ratio /= b + m;
        current_.mantissa *= ratio;
        current_.normalize();
        err_ += unit * T(2 * (spec_.upper().size() + spec_.lower().size()) + 3);
        cached_n_ = n;
        return {current_.value(), err_, false, false};
    }

private:
    const BasicHypSpec<T>& spec_;
    Scaled<T> current_;
    T err_{0};
    std::uint64_t cached_n_ = 0;
    bool terminated_ = false;
};

template <class T>
EvalReport to_report(const SeriesSum<T>& s, PrecisionPath path, const SeriesConfig& config) {
    EvalReport r;
    r.value = static_cast<double>(s.value);
    r.abs_err_estimate = static_cast<double>(s.abs_err);
    r.terms_used = s.terms;
    r.max_term_magnitude = static_cast<double>(s.max_term);
    if (s.value == T(0)) {
        r.cancellation_ratio = s.max_term == T(0) ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
        r.cancellation_ratio = static_cast<double>(s.max_term / num::abs(s.value));
    }
    r.precision_path = path;
    // The extended path tolerates the same loss relative to its own epsilon.
    const double threshold = path == PrecisionPath::Standard
                                 ? config.cancellation_threshold
                                 : config.cancellation_threshold * 1e17;
    r.precision_loss = r.cancellation_ratio > threshold;
    return r;
}

}  // namespace

template <class T>
SeriesSum<T> sum_wright(const BasicWrightSpec<T>& spec, const SeriesConfig& config) {
    WrightTerms<T> terms(spec);
    return drive<T>(terms, config);
}

template <class T>
SeriesSum<T> sum_hyp(const BasicHypSpec<T>& spec, const SeriesConfig& config) {
    HypTerms<T> terms(spec);
    return drive<T>(terms, config);
}

EvalReport eval_wright(const WrightSpec& spec, const SeriesConfig& config) {
    return to_report(sum_wright(spec, config), PrecisionPath::Standard, config);
}

EvalReport eval_wright(const WrightSpecExt& spec, const SeriesConfig& config) {
    return to_report(sum_wright(spec, config), PrecisionPath::Extended, config);
}

EvalReport eval_hyp(const HypSpec& spec, const SeriesConfig& config) {
    return to_report(sum_hyp(spec, config), PrecisionPath::Standard, config);
}

EvalReport eval_hyp(const HypSpecExt& spec, const SeriesConfig& config) {
    return to_report(sum_hyp(spec, config), PrecisionPath::Extended, config);
}

EvalReport eval_wright_escalating(const WrightSpec& spec, const SeriesConfig& config) {
    EvalReport standard = eval_wright(spec, config);
    if (!standard.precision_loss) return standard;
    return eval_wright(widen(spec), config);
}

template class BasicWrightSpec<double>;
template class BasicWrightSpec<Quad>;
template class BasicHypSpec<double>;
template class BasicHypSpec<Quad>;
template double convergence_margin(const std::vector<WrightParam<double>>&,
                                   const std::vector<WrightParam<double>>&);
template Quad convergence_margin(const std::vector<WrightParam<Quad>>&,
                                 const std::vector<WrightParam<Quad>>&);
template SeriesSum<double> sum_wright(const WrightSpec&, const SeriesConfig&);
template SeriesSum<Quad> sum_wright(const WrightSpecExt&, const SeriesConfig&);
template SeriesSum<double> sum_hyp(const HypSpec&, const SeriesConfig&);
template SeriesSum<Quad> sum_hyp(const HypSpecExt&, const SeriesConfig&);

}  // namespace levy
