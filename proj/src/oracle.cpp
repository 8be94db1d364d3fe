#include "levy/oracle.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "levy/errors.hpp"
#include "levy/quadrature.hpp"
#include "levy/real.hpp"

namespace levy {

namespace {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

void check_args(double alpha, double x, const char* who) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError(std::string(who) + ": alpha must lie in (0, 1)");
    }
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError(std::string(who) + ": x must be positive and finite");
    }
}

struct Panel {
    double value;
    double error;
};

// One fixed panel; slack disabled, the error estimate is accumulated instead.
template <class F>
Panel panel(F&& f, double a, double b) {
    double error = 0.0, l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, a, b, 4, 1e-13, &error, &l1);
    return {v, error};
}

// log Gamma for Re z > 0: upward shift, then Stirling with eight Bernoulli
// corrections. Only the value mod 2 pi i matters to callers.
cplx log_gamma_c(cplx z) {
    cplx shift_product(1.0, 0.0);
    double shift_log = 0.0;
    while (std::abs(z) < 16.0) {
        shift_product *= z;
        if (std::abs(shift_product) > 1e200) {
            shift_log += std::log(std::abs(shift_product));
            shift_product /= std::abs(shift_product);
        }
        z += 1.0;
    }
    static const double bernoulli_terms[] = {
        1.0 / 12.0,       -1.0 / 360.0,        1.0 / 1260.0,    -1.0 / 1680.0,
        1.0 / 1188.0,     -691.0 / 360360.0,   1.0 / 156.0,     -3617.0 / 122400.0,
    };
    const cplx inv = 1.0 / z;
    const cplx inv2 = inv * inv;
    cplx series = 0.0;
    cplx power = inv;
    for (double c : bernoulli_terms) {
        series += c * power;
        power *= inv2;
    }
    const cplx stirling = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi) + series;
    return stirling - std::log(shift_product) - shift_log;
}

EvalReport real_axis(double alpha, double x, const OracleConfig& cfg) {
    // r = u^(1/alpha): zeros of the sine sit at u = k pi / sin(pi alpha).
    const double w = 1.0 / alpha;
    const double sin_pa = std::sin(pi * alpha), cos_pa = std::cos(pi * alpha);
    auto envelope = [&](double u) {
        return std::pow(u, w - 1.0) * std::exp(-x * std::pow(u, w) - u * cos_pa) / (pi * alpha);
    };
    auto integrand = [&](double u) { return envelope(u) * std::sin(u * sin_pa); };
    const double spacing = pi / sin_pa;
    CompensatedSum<double> sum;
    double error = 0.0;
    std::uint64_t nodes = 0;
    for (std::uint64_t k = 0;; ++k) {
        const double a = double(k) * spacing, b = a + spacing;
        const Panel p = panel(integrand, a, b);
        sum.add(p.value);
        error += p.error;
        nodes += 31;
        const double slope = (w - 1.0) / b - x * w * std::pow(b, w - 1.0) - cos_pa;
        const double tail = envelope(b) * spacing;
        if (slope < 0.0 && (tail < 1e-3 * cfg.abs_tol || tail < 1e-17 * std::fabs(sum.value()))) {
            error += tail;
            break;
        }
        if (nodes > cfg.max_nodes) {
            throw QuadratureFailure("bromwich_density: node budget exhausted at alpha=" +
                                    std::to_string(alpha) + ", x=" + std::to_string(x));
        }
    }
    EvalReport r;
    r.value = sum.value();
    r.abs_err_estimate = error;
    r.terms_used = nodes;
    r.precision_path = PrecisionPath::Oracle;
    return r;
}

EvalReport wedge(double alpha, double x, const OracleConfig& cfg) {
    // s = sigma + r e^{i theta}; sigma is the saddle of x s - s^alpha on the
    // positive axis, theta halfway between pi/2 and pi/(2 alpha) so both
    // exp(x s) and exp(-s^alpha) decay along the ray.
    const double theta = 0.5 * (pi / 2.0 + pi / (2.0 * alpha));
    const cplx dir = std::polar(1.0, theta);
    const double sigma = std::pow(alpha / x, 1.0 / (1.0 - alpha));
    auto phi = [&](cplx s) { return x * s - std::pow(s, alpha); };
    // Measured relative to the saddle level so tiny densities keep their
    // relative accuracy.
    const double start_level = -(1.0 - alpha) * std::pow(sigma, alpha);
    EvalReport r;
    r.precision_path = PrecisionPath::Oracle;
    if (!(start_level > -800.0)) {
        // exp(start_level) already underflows.
        return r;
    }
    auto integrand = [&](double t) {
        const cplx s = sigma + t * dir;
        return std::imag(dir * std::exp(phi(s) - start_level)) / pi;
    };
    auto step = [&](double t) {
        const cplx s = sigma + t * dir;
        const double d1 = std::abs(x - alpha * std::pow(s, alpha - 1.0));
        const double d2 = std::abs(alpha * (1.0 - alpha) * std::pow(s, alpha - 2.0));
        double h = 0.5 * std::abs(s);
        if (d1 > 0.0) h = std::min(h, 2.0 * pi / d1);
        if (d2 > 0.0) h = std::min(h, 2.0 / std::sqrt(d2));
        return std::max(h, 1e-300);
    };
    const double scale = std::exp(start_level);
    CompensatedSum<double> sum;
    double error = 0.0;
    std::uint64_t nodes = 0;
    double t = 0.0;
    for (;;) {
        const double h = step(t);
        const Panel p = panel(integrand, t, t + h);
        sum.add(p.value);
        error += p.error;
        nodes += 31;
        t += h;
        const cplx s = sigma + t * dir;
        const double level = std::real(phi(s));
        const double slope = std::real(dir * (x - alpha * std::pow(s, alpha - 1.0)));
        if (slope < 0.0) {
            const double tail = std::exp(level - start_level) / (pi * -slope);
            if (level < start_level - 42.0) {
                error += tail;
                break;
            }
        }
        if (nodes > cfg.max_nodes) {
            throw QuadratureFailure("bromwich_density: node budget exhausted at alpha=" +
                                    std::to_string(alpha) + ", x=" + std::to_string(x));
        }
    }
    r.value = sum.value() * scale;
    r.abs_err_estimate = error * scale;
    r.terms_used = nodes;
    return r;
}

}  // namespace

EvalReport bromwich_density(double alpha, double x, const OracleConfig& cfg) {
    check_args(alpha, x, "bromwich_density");
    return alpha < 0.5 ? real_axis(alpha, x, cfg) : wedge(alpha, x, cfg);
}

EvalReport mellin_density(double alpha, double x, const OracleConfig& cfg) {
    check_args(alpha, x, "mellin_density");
    const double c = (2.0 - alpha) / (2.0 * alpha);
    const double log_x = std::log(x);
    auto log_integrand = [&](double t) {
        const cplx s(c, t);
        return log_gamma_c(s) - log_gamma_c(alpha * s) + (alpha * s - 1.0) * log_x;
    };
    auto integrand = [&](double t) { return std::real(std::exp(log_integrand(t))) / pi; };
    const double beta = pi * (1.0 - alpha) / 2.0;
    CompensatedSum<double> sum;
    double error = 0.0, peak = 0.0, previous = std::numeric_limits<double>::infinity();
    std::uint64_t nodes = 0;
    double t = 0.0;
    for (;;) {
        const double rate = std::fabs((1.0 - alpha) * std::log1p(t) - alpha * std::log(alpha) +
                                      alpha * log_x);
        const double h = std::min(4.0, pi / (rate + 0.5));
        const Panel p = panel(integrand, t, t + h);
        sum.add(p.value);
        error += p.error;
        nodes += 31;
        t += h;
        const double env = std::exp(std::real(log_integrand(t))) / pi;
        peak = std::max(peak, env);
        if (env < previous) {
            const double tail = env / beta;
            if (env < 1e-18 * peak || tail < 1e-3 * cfg.abs_tol) {
                error += tail;
                break;
            }
        }
        previous = env;
        if (nodes > cfg.max_nodes) {
            throw QuadratureFailure("mellin_density: node budget exhausted at alpha=" +
                                    std::to_string(alpha) + ", x=" + std::to_string(x));
        }
    }
    EvalReport r;
    r.value = sum.value();
    r.abs_err_estimate = error;
    r.terms_used = nodes;
    r.precision_path = PrecisionPath::Oracle;
    return r;
}

EvalReport density_oracle(double alpha, double x, const OracleConfig& cfg) {
    if (!cfg.cross_check) {
        return cfg.method == OracleMethod::BromwichReal ? bromwich_density(alpha, x, cfg)
                                                        : mellin_density(alpha, x, cfg);
    }
    const EvalReport b = bromwich_density(alpha, x, cfg);
    const EvalReport m = mellin_density(alpha, x, cfg);
    const double diff = std::fabs(b.value - m.value);
    if (diff > 3.0 * cfg.abs_tol) {
        throw OracleDisagreement("oracle methods disagree at alpha=" + std::to_string(alpha) +
                                 ", x=" + std::to_string(x) + ": " + std::to_string(b.value) +
                                 " vs " + std::to_string(m.value));
    }
    EvalReport r = cfg.method == OracleMethod::BromwichReal ? b : m;
    r.abs_err_estimate = std::max(r.abs_err_estimate, diff);
    r.terms_used = b.terms_used + m.terms_used;
    return r;
}

double small_x_log_density(double alpha, double x) {
    const double a1 = 1.0 - alpha;
    const double xi = a1 * std::pow(alpha, alpha / a1) * std::pow(x, -alpha / a1);
    return 0.5 * std::log(std::pow(alpha, 1.0 / a1) / (2.0 * pi * a1)) -
           (2.0 - alpha) / (2.0 * a1) * std::log(x) - xi;
}

double small_x_cutoff(double alpha, double depth) {
    const double a1 = 1.0 - alpha;
    return std::pow(a1 * std::pow(alpha, alpha / a1) / depth, a1 / alpha);
}

double tail_mass(double alpha, double big_x) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("tail_mass: alpha must lie in (0, 1)");
    if (!(big_x > 0.0)) throw DomainError("tail_mass: X must be positive");
    const double log_x = std::log(big_x);
    CompensatedSum<double> sum;
    double previous = std::numeric_limits<double>::infinity();
    int small = 0;
    for (int k = 1; k < 5000; ++k) {
        const double s = num::sinpi(alpha * k);
        const double log_mag = std::lgamma(alpha * k) - std::lgamma(k + 1.0) - alpha * k * log_x;
        const double term = (k % 2 == 0 ? -1.0 : 1.0) * s * std::exp(log_mag) / pi;
        sum.add(term);
        const double mag = std::exp(log_mag);
        small = (mag < 1e-18 * std::fabs(sum.value()) && mag < previous) ? small + 1 : 0;
        if (small >= 3) return sum.value();
        previous = mag;
    }
    throw TermCapExceeded("tail_mass: series did not settle");
}

double moment_closed_form(double alpha, double nu) {
    if (nu >= alpha) throw DivergentMoment("moment of order nu >= alpha diverges");
    return std::tgamma(1.0 - nu / alpha) / std::tgamma(1.0 - nu);
}

double moment_oracle(double alpha, double nu, const OracleConfig& cfg) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("moment_oracle: alpha must lie in (0, 1)");
    }
    if (nu >= alpha) {
        throw DivergentMoment("moment of order " + std::to_string(nu) +
                              " diverges for alpha=" + std::to_string(alpha));
    }
    const double big_x = 50.0;
    const double low = small_x_cutoff(alpha, 60.0);
    quad::Options opt;
    opt.rel_tol = 1e-11;
    const quad::Result body = quad::integrate_log(
        [&](double x) { return std::pow(x, nu) * bromwich_density(alpha, x, cfg).value; }, low,
        big_x, opt);
    // int_X^inf x^nu f: the large-x series integrated termwise.
    const double log_x = std::log(big_x);
    CompensatedSum<double> tail;
    for (int k = 1; k < 2000; ++k) {
        const double log_mag = std::lgamma(alpha * k + 1.0) - std::lgamma(k + 1.0) +
                               (nu - alpha * k) * log_x;
        const double term = (k % 2 == 0 ? -1.0 : 1.0) * num::sinpi(alpha * k) *
                            std::exp(log_mag) / (pi * (alpha * k - nu));
        tail.add(term);
        if (std::exp(log_mag) < 1e-18 * std::fabs(tail.value()) && k > 3) break;
    }
    return body.value + tail.value();
}

}  // namespace levy
