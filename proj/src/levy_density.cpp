#include "levy/levy_density.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "levy/errors.hpp"
#include "levy/special.hpp"

namespace levy {

template <class T>
SeriesSum<T> evaluate_representation(const Representation& rep, T x, const SeriesConfig& config) {
    const T unit = num::Traits<T>::epsilon() / T(2);
    const T log_x = num::log(x);
    const T log_z =
        rep.template log_argument_constant<T>() - rep.template argument_exponent<T>() * log_x;
    const T z = num::exp(log_z);
    if (!num::isfinite(z)) throw AccuracyError("series argument overflows at x=" + std::to_string(double(x)));
    const T base = rep.template log_scale<T>() - log_x;

    CompensatedSum<T> total;
    SeriesSum<T> out;
    T errors{0};
    for (const Block& block : rep.blocks) {
        const T argument = T(block.argument_sign) * z;
        const T log_prefactor = base + block.power.template to<T>() * log_z;
        if (block.kind == BlockKind::Wright) {
            const SeriesSum<T> s = sum_wright(materialize(rep, block, argument, log_prefactor), config);
            total.add(s.value);
            errors += s.abs_err;
            out.max_term = std::max(out.max_term, s.max_term);
            out.magnitude_sum += s.magnitude_sum;
            out.terms += s.terms;
            continue;
        }
        // prod Gamma(num) / prod Gamma(den) * pFq; a den pole kills the block.
        bool vanishes = false;
        T log_gamma_part{0}, spread{0};
        int sign = 1;
        for (const Rational& r : block.gamma_den) {
            if (r.is_nonpositive_integer()) vanishes = true;
        }
        if (vanishes) continue;
        for (const Rational& r : block.gamma_num) {
            const SignedLog<T> g = log_gamma(r.template to<T>());
            log_gamma_part += g.log_magnitude;
            spread += num::abs(g.log_magnitude);
            sign *= g.sign;
        }
        for (const Rational& r : block.gamma_den) {
            const SignedLog<T> g = log_gamma(r.template to<T>());
            log_gamma_part -= g.log_magnitude;
            spread += num::abs(g.log_magnitude);
            sign *= g.sign;
        }
        std::vector<T> upper, lower;
        for (const Rational& r : block.hyp_upper) upper.push_back(r.template to<T>());
        for (const Rational& r : block.hyp_lower) lower.push_back(r.template to<T>());
        const SeriesSum<T> s = sum_hyp(BasicHypSpec<T>(upper, lower, argument), config);
        const T log_scale = log_prefactor + log_gamma_part;
        const T scale = T(sign) * num::exp(log_scale);
        const T value = s.value * scale;
        total.add(value);
        errors += s.abs_err * num::abs(scale) +
                  num::abs(value) * unit * (T(4) + T(2) * (spread + num::abs(log_scale)));
        out.max_term = std::max(out.max_term, s.max_term * num::abs(scale));
        out.magnitude_sum += s.magnitude_sum * num::abs(scale);
        out.terms += s.terms;
    }
    out.value = total.value();
    out.abs_err = errors + T(2) * unit * total.magnitude();
    return out;
}

template SeriesSum<double> evaluate_representation(const Representation&, double, const SeriesConfig&);
template SeriesSum<Quad> evaluate_representation(const Representation&, Quad, const SeriesConfig&);

namespace {

template <class T>
EvalReport report_from(const SeriesSum<T>& s, PrecisionPath path) {
    EvalReport r;
    r.value = static_cast<double>(s.value);
    r.abs_err_estimate = static_cast<double>(s.abs_err);
    r.terms_used = s.terms;
    r.max_term_magnitude = static_cast<double>(s.max_term);
    r.cancellation_ratio = s.value == T(0) ? std::numeric_limits<double>::infinity()
                                           : static_cast<double>(s.max_term / num::abs(s.value));
    r.precision_path = path;
    return r;
}

bool certified(const EvalReport& r, double rel) {
    if (!std::isfinite(r.value) || !std::isfinite(r.abs_err_estimate)) return false;
    if (r.value < 0.0) return false;
    return r.abs_err_estimate <= rel * r.value;
}

void clamp(EvalReport& r) {
    if (r.value < 0.0 && -r.value < r.abs_err_estimate) r.value = 0.0;
}

}  // namespace

EvalReport density(const Representation& rep, double x, const DensityConfig& config) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("density: x must be positive and finite");
    }
    const double alpha = rep.index.alpha;
    // Deep in the left tail the value is below the binary64 range.
    if (x < small_x_cutoff(alpha, 30.0) && small_x_log_density(alpha, x) < -745.0) {
        EvalReport r;
        r.cancellation_ratio = std::numeric_limits<double>::infinity();
        return r;
    }

    bool standard_flagged = false;
    bool try_extended = true;
    if (!config.force_extended) {
        try {
            EvalReport r = report_from(evaluate_representation(rep, x, config.series),
                                       PrecisionPath::Standard);
            standard_flagged = r.cancellation_ratio > config.series.cancellation_threshold;
            if (!standard_flagged && certified(r, config.target_rel)) {
                clamp(r);
                return r;
            }
        } catch (const TermCapExceeded&) {
            standard_flagged = true;
            try_extended = false;
        } catch (const AccuracyError&) {
            standard_flagged = true;
        }
    }

    std::string reason = "standard path failed";
    if (try_extended) {
        SeriesConfig wide = config.series;
        wide.rel_tol = config.extended_series_tol;
        try {
            EvalReport r = report_from(evaluate_representation<Quad>(rep, Quad(x), wide),
                                       PrecisionPath::Extended);
            r.precision_loss = standard_flagged;
            if (certified(r, config.extended_rel)) {
                clamp(r);
                return r;
            }
            reason = "extended path reached relative error " +
                     std::to_string(r.relative_error_estimate());
        } catch (const TermCapExceeded& e) {
            reason = e.what();
        } catch (const AccuracyError& e) {
            reason = e.what();
        }
    }

    if (!config.oracle_fallback) {
        throw AccuracyError("density " + rep.index.str() + " at x=" + std::to_string(x) +
                            ": " + reason);
    }
    EvalReport r = density_oracle(alpha, x, config.oracle);
    r.precision_path = PrecisionPath::Oracle;
    r.precision_loss = true;
    clamp(r);
    return r;
}

EvalReport density(const LevyIndex& index, double x, const DensityConfig& config) {
    return density(build_representation(index), x, config);
}

}  // namespace levy
