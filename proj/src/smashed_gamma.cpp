#include "levy/smashed_gamma.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "levy/errors.hpp"
#include "levy/quadrature.hpp"

namespace levy {

namespace {

constexpr double pi = std::numbers::pi;

void check_params(const SmashedGammaParams& p, const char* who) {
    if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) {
        throw DomainError(std::string(who) + ": alpha must be positive");
    }
    if (!(p.gamma_shape > 0.0) || !std::isfinite(p.gamma_shape)) {
        throw DomainError(std::string(who) + ": gamma must be positive");
    }
}

// Standard path, then binary128; nullopt when neither reaches the bar.
std::optional<EvalReport> certified_wright(const WrightSpec& spec, double rel) {
    SeriesConfig config;
    try {
        EvalReport r = eval_wright(spec, config);
        if (!r.precision_loss && r.abs_err_estimate <= rel * std::fabs(r.value)) return r;
    } catch (const TermCapExceeded&) {
        return std::nullopt;
    } catch (const AccuracyError&) {
    }
    config.rel_tol = 1e-30;
    try {
        EvalReport r = eval_wright(widen(spec), config);
        r.precision_loss = true;
        if (r.abs_err_estimate <= rel * std::fabs(r.value)) return r;
    } catch (const TermCapExceeded&) {
    } catch (const AccuracyError&) {
    }
    return std::nullopt;
}

std::function<double(double)> stable_density(double alpha, const DensityConfig& config) {
    if (const auto index = approximate_index(alpha)) {
        Representation rep = build_representation(*index);
        return [rep = std::move(rep), config](double u) { return density(rep, u, config).value; };
    }
    return [alpha, config](double u) { return density_oracle(alpha, u, config.oracle).value; };
}

EvalReport closed_half(double gamma, double x) {
    // 4 Gamma(g + 1/2) (4x)^(g-1) (1+4x)^(-g-1/2) / (sqrt(pi) Gamma(g))
    const double log_value = std::log(4.0) + std::lgamma(gamma + 0.5) - std::lgamma(gamma) -
                             0.5 * std::log(pi) + (gamma - 1.0) * std::log(4.0 * x) -
                             (gamma + 0.5) * std::log1p(4.0 * x);
    EvalReport r;
    r.value = std::exp(log_value);
    r.abs_err_estimate = r.value * 1e-15 * (8.0 + std::fabs(log_value));
    r.terms_used = 1;
    return r;
}

EvalReport gamma_pdf(double gamma, double x) {
    EvalReport r;
    const double log_value = (gamma - 1.0) * std::log(x) - x - std::lgamma(gamma);
    r.value = std::exp(log_value);
    r.abs_err_estimate = r.value * 1e-15 * (4.0 + std::fabs(log_value));
    r.terms_used = 1;
    return r;
}

EvalReport experimental_series(double alpha, double gamma, double x) {
    // Residues of Gamma(gamma - alpha s): converges for alpha > 1/2.
    const WrightSpec spec =
        make_wright({{gamma / alpha, 1.0 / alpha}}, {{gamma, 1.0}}, -x,
                    (gamma - 1.0) * std::log(x) - std::log(alpha) - std::lgamma(gamma));
    auto r = certified_wright(spec, 1e-8);
    if (!r) throw AccuracyError("smashed_density: experimental series did not certify");
    r->experimental = true;
    return *r;
}

EvalReport convolution(double alpha, double gamma, double x, const SmashedConfig& config) {
    DensityConfig inner = config.density;
    inner.oracle.cross_check = false;
    inner.extended_series_tol = 1e-22;
    const auto f = stable_density(alpha, inner);
    const double cut = small_x_cutoff(alpha, 28.0);
    double t_hi = gamma + 40.0 + 12.0 * std::sqrt(gamma);
    t_hi = std::min(t_hi, x / cut);
    const double u_hi = std::log(t_hi);
    const double u_lo =
        std::min(std::min(std::log(gamma), std::log(x)) - 45.0 / (gamma + alpha), u_hi - 10.0);
    const double log_norm = std::lgamma(gamma);
    auto integrand = [&](double u) {
        const double t = std::exp(u);
        return f(x / t) * std::exp((gamma - 1.0) * u - t - log_norm);
    };
    quad::Options opt;
    opt.rel_tol = config.quad_rel_tol;
    // Break at the bulk of each factor so the adaptive rule starts well.
    std::vector<double> cuts{u_lo, u_hi};
    for (double c : {std::log(x), std::log(gamma)}) {
        if (c > u_lo && c < u_hi) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return b - a < 1e-12; }),
               cuts.end());
    const quad::Result q = quad::integrate_panels(integrand, cuts, false, opt);
    EvalReport r;
    r.value = q.value;
    r.abs_err_estimate = q.error;
    r.precision_path = PrecisionPath::Standard;
    return r;
}

}  // namespace

EvalReport smashed_density(const SmashedGammaParams& params, double x, const SmashedConfig& config) {
    check_params(params, "smashed_density");
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("smashed_density: x must be positive and finite");
    }
    if (params.alpha == 0.5) return closed_half(params.gamma_shape, x);
    if (params.alpha == 1.0) return gamma_pdf(params.gamma_shape, x);
    if (params.alpha > 1.0) return experimental_series(params.alpha, params.gamma_shape, x);
    return convolution(params.alpha, params.gamma_shape, x, config);
}

EvalReport smashed_laplace(const SmashedGammaParams& params, double y, const SmashedConfig& config) {
    check_params(params, "smashed_laplace");
    if (!(y >= 0.0) || !std::isfinite(y)) {
        throw DomainError("smashed_laplace: y must be nonnegative and finite");
    }
    const double a = params.alpha, g = params.gamma_shape;
    EvalReport r;
    r.experimental = a > 1.0;
    if (y == 0.0) {
        r.value = 1.0;
        return r;
    }
    if (a == 1.0) {
        r.value = std::pow(1.0 + y, -g);
        r.abs_err_estimate = 4e-16 * r.value * (1.0 + g);
        return r;
    }
    if (a < 1.0) {
        const WrightSpec spec = make_wright({{g, a}}, {}, -std::pow(y, a), -std::lgamma(g));
        if (auto s = certified_wright(spec, 1e-12)) return *s;
    }
    // Quadrature of exp(-y x) s(x); s(x) ~ x^(g-1) near 0.
    auto integrand = [&](double x) {
        return std::exp(-y * x) * smashed_density(params, x, config).value;
    };
    const double lo = std::exp(-40.0 / g) * std::min(1.0, 1.0 / y);
    const double hi = 60.0 / y + 10.0;
    quad::Options opt;
    opt.rel_tol = 1e-10;
    const quad::Result q =
        quad::integrate_panels(integrand, {lo, std::min(1.0, hi / 2.0), hi}, true, opt);
    r.value = q.value;
    r.abs_err_estimate = q.error;
    r.precision_path = PrecisionPath::Oracle;
    return r;
}

double smashed_tail(const SmashedGammaParams& params, double x) {
    check_params(params, "smashed_tail");
    const double a = params.alpha, g = params.gamma_shape;
    if (!(a < 1.0)) throw DomainError("smashed_tail: needs alpha < 1");
    const double log_x = std::log(x);
    double sum = 0.0, previous = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 500; ++k) {
        const double log_mag = std::lgamma(a * k) - std::lgamma(k + 1.0) + std::lgamma(g + a * k) -
                               std::lgamma(g) - a * k * log_x;
        const double mag = std::exp(log_mag);
        if (mag > previous) break;  // smallest term reached
        sum += (k % 2 == 0 ? -1.0 : 1.0) * std::sin(pi * a * k) * mag / pi;
        if (mag < 1e-17 * std::fabs(sum)) break;
        previous = mag;
    }
    return sum;
}

double process_cdf(const SmashedGammaParams& params, double x, const SmashedConfig& config) {
    check_params(params, "process_cdf");
    if (!(x > 0.0)) throw DomainError("process_cdf: x must be positive");
    if (std::isinf(x)) return 1.0;
    const double a = params.alpha, g = params.gamma_shape;
    if (a == 0.5) {
        // 4x/(1+4x) is Beta(gamma, 1/2) distributed.
        const double u = 4.0 * x / (1.0 + 4.0 * x);
        return boost::math::ibeta(g, 0.5, u);
    }
    if (a == 1.0) return boost::math::gamma_p(g, x);
    if (a < 1.0 && x > 1e3) return 1.0 - smashed_tail(params, x);
    if (a > 1.0) throw DomainError("process_cdf: needs alpha <= 1");
    // P(G L <= x) = int f_alpha(u) P(G <= x/u) du, a single integral.
    const auto f = stable_density(a, config.density);
    auto integrand = [&](double u) { return f(u) * boost::math::gamma_p(g, x / u); };
    const double lo = small_x_cutoff(a, 40.0);
    // beyond hi the integrand is below 1e-16 of its peak
    const double hi = std::max(x, 1.0) * std::pow(10.0, 16.0 / (a + g));
    std::vector<double> cuts{lo};
    for (double c = std::pow(10.0, std::ceil(std::log10(lo))); c < hi; c *= 10.0) {
        if (c > lo * 1.0001) cuts.push_back(c);
    }
    cuts.push_back(hi);
    quad::Options opt;
    opt.rel_tol = config.quad_rel_tol;
    const double value = quad::integrate_panels(integrand, cuts, true, opt).value +
                         tail_mass(a, hi) * boost::math::gamma_p(g, x / hi);
    return std::clamp(value, 0.0, 1.0);
}

EvalReport attraction_check(double alpha, double y, int n) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("attraction_check: alpha must lie in (0, 1]");
    if (!(y >= 0.0)) throw DomainError("attraction_check: y must be nonnegative");
    if (n < 1) throw DomainError("attraction_check: n must be positive");
    EvalReport r;
    if (y == 0.0) {
        r.value = 1.0;
        return r;
    }
    if (alpha == 1.0) {
        r.value = std::pow(1.0 + y / n, -double(n));
        r.abs_err_estimate = 4e-16 * r.value * n;
        return r;
    }
    const double z = -std::pow(y / n, alpha);
    const WrightSpec spec = make_wright({{double(n), alpha}}, {}, z, -std::lgamma(double(n)));
    auto s = certified_wright(spec, 1e-10);
    if (!s) throw AccuracyError("attraction_check: series did not certify");
    return *s;
}

double levy_smirnov_pdf(const LevySmirnovParams& params, double t) {
    if (!(params.mu > 0.0)) throw DomainError("levy_smirnov_pdf: mu must be positive");
    if (!(t > 0.0)) throw DomainError("levy_smirnov_pdf: t must be positive");
    return std::sqrt(params.mu / (2.0 * pi)) * std::pow(t, -1.5) * std::exp(-params.mu / (2.0 * t));
}

double convolve_marginals(double alpha, double t1, double t2, double x, const SmashedConfig& config) {
    if (!(x > 0.0)) throw DomainError("convolve_marginals: x must be positive");
    const SmashedGammaParams p1{alpha, t1}, p2{alpha, t2};
    auto integrand = [&](double u) {
        if (u <= 0.0 || u >= x) return 0.0;
        return smashed_density(p1, u, config).value * smashed_density(p2, x - u, config).value;
    };
    quad::Options opt;
    opt.rel_tol = 1e-12;
    return quad::integrate_endpoint_singular(integrand, 0.0, x, opt).value;
}

}  // namespace levy
