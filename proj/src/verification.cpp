#include "levy/verification.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <memory>
#include <numeric>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "levy/errors.hpp"
#include "levy/quadrature.hpp"
#include "levy/special.hpp"

namespace levy {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

CheckResult make(std::string name, double tolerance, double residual, std::string detail = {}) {
    CheckResult r;
    r.check = std::move(name);
    r.tolerance = tolerance;
    r.residual = residual;
    r.pass = std::isfinite(residual) && residual <= tolerance;
    r.detail = std::move(detail);
    return r;
}

// Integrate over [a, b] in log space, one panel per decade.
double integrate_decades(const quad::Integrand& f, double a, double b, double rel_tol) {
    quad::Options opt;
    opt.rel_tol = rel_tol;
    std::vector<double> cuts{a};
    for (double c = std::pow(10.0, std::ceil(std::log10(a))); c < b; c *= 10.0) {
        if (c > a * 1.0001) cuts.push_back(c);
    }
    cuts.push_back(b);
    return quad::integrate_panels(f, cuts, true, opt).value;
}

}  // namespace

std::function<double(double)> density_function(double alpha, const DensityConfig& config) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("density_function: alpha must lie in (0, 1)");
    if (const auto index = approximate_index(alpha)) {
        auto rep = std::make_shared<Representation>(build_representation(*index));
        return [rep, config](double x) { return density(*rep, x, config).value; };
    }
    return [alpha, config](double x) { return density_oracle(alpha, x, config.oracle).value; };
}

double density_laplace(double alpha, double y, const DensityConfig& config) {
    if (!(y > 0.0)) throw DomainError("density_laplace: y must be positive");
    const auto f = density_function(alpha, config);
    const double lo = small_x_cutoff(alpha, 40.0);
    const double hi = std::max(45.0 / y, 10.0 * lo);
    return integrate_decades([&](double x) { return std::exp(-y * x) * f(x); }, lo, hi, 1e-11);
}

double density_normalization(double alpha, const DensityConfig& config) {
    const auto f = density_function(alpha, config);
    const double lo = small_x_cutoff(alpha, 40.0);
    constexpr double big_x = 50.0;
    return integrate_decades(f, lo, big_x, 1e-11) + tail_mass(alpha, big_x);
}

double smashed_normalization(const SmashedGammaParams& params, const SmashedConfig& config) {
    const auto s = [&](double x) { return smashed_density(params, x, config).value; };
    quad::Options opt;
    opt.rel_tol = 1e-10;
    // s(x) ~ x^(gamma-1) at 0, so the first panel is a smooth power in log x.
    const double lo = std::exp(-40.0 / params.gamma_shape);
    std::vector<double> cuts{lo};
    for (double c : {1e-4, 1e-2, 1.0, 10.0, 100.0}) {
        if (c > lo) cuts.push_back(c);
    }
    if (params.alpha >= 1.0) {
        const double end = params.gamma_shape + 60.0 + 15.0 * std::sqrt(params.gamma_shape);
        while (cuts.back() >= end) cuts.pop_back();
        cuts.push_back(end);
        return quad::integrate_panels(s, cuts, true, opt).value;
    }
    constexpr double big_x = 1e3;
    cuts.push_back(big_x);
    return quad::integrate_panels(s, cuts, true, opt).value + smashed_tail(params, big_x);
}

double smirnov_cdf(double mu, double t) {
    const LevySmirnovParams params{mu};
    quad::Options opt;
    opt.rel_tol = 1e-12;
    // The integrand is flat to all orders at 0.
    return quad::integrate([&](double u) { return u > 0.0 ? levy_smirnov_pdf(params, u) : 0.0; },
                           0.0, t, opt)
        .value;
}

CheckResult check_laplace(double alpha, double y, double tolerance) {
    const double got = density_laplace(alpha, y);
    const double want = std::exp(-std::pow(y, alpha));
    return make("laplace alpha=" + fmt(alpha) + " y=" + fmt(y), tolerance, std::fabs(got - want),
                "quadrature " + fmt(got) + " vs exp(-y^alpha) " + fmt(want));
}

CheckResult check_normalization(double alpha, double tolerance) {
    const double got = density_normalization(alpha);
    return make("normalization alpha=" + fmt(alpha), tolerance, std::fabs(got - 1.0),
                "integral " + fmt(got));
}

CheckResult check_smashed_normalization(double alpha, double gamma, double tolerance) {
    SmashedConfig config;
    config.quad_rel_tol = 1e-9;
    const double got = smashed_normalization({alpha, gamma}, config);
    return make("smashed normalization alpha=" + fmt(alpha) + " gamma=" + fmt(gamma), tolerance,
                std::fabs(got - 1.0), "integral " + fmt(got));
}

CheckResult check_gauss_legendre(int max_m, double tolerance) {
    double worst = 0.0;
    std::string where;
    for (int m = 2; m <= max_m; ++m) {
        for (int k = 0; k <= 60; ++k) {
            const double z = 0.1 * std::pow(200.0, k / 60.0);
            const double r = gauss_legendre_check(m, z);
            if (!(r <= worst)) {
                worst = r;
                where = "m=" + std::to_string(m) + " z=" + fmt(z);
            }
        }
    }
    return make("gauss-legendre m<=" + std::to_string(max_m), tolerance, worst, "worst at " + where);
}

CheckResult check_gamma_identity(int cases, std::uint64_t seed, double tolerance) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> beta_dist(-5.0, 5.0);
    std::uniform_int_distribution<int> v_dist(0, 10);
    const auto near_pole = [](double x) { return x < 0.5 && std::fabs(x - std::round(x)) < 1e-3; };
    double worst = 0.0;
    std::string where;
    int done = 0;
    while (done < cases) {
        const double beta = beta_dist(rng);
        const int v = v_dist(rng);
        if (near_pole(beta + 1.0 - v) || near_pole(beta + 1.0)) continue;
        const double lhs = gamma(beta + 1.0 - v);
        const double rhs = negated_gamma_ratio(beta, std::uint64_t(v));
        const double rel = std::fabs(rhs - lhs) / std::fabs(lhs);
        if (!(rel <= worst)) {
            worst = rel;
            where = "beta=" + fmt(beta) + " v=" + std::to_string(v);
        }
        ++done;
    }
    return make("gamma identity " + std::to_string(cases) + " cases", tolerance, worst,
                "worst at " + where);
}

CheckResult check_convergence_gate() {
    int failures = 0;
    std::string detail;
    // margins -1 and -2 must be rejected
    for (const auto& upper : {std::vector<std::pair<double, double>>{{0.5, 1.0}},
                              std::vector<std::pair<double, double>>{{0.5, 1.0}, {0.3, 1.0}}}) {
        try {
            (void)make_wright(upper, {}, 0.1);
            ++failures;
            detail += "accepted margin " + fmt(-double(upper.size())) + "; ";
        } catch (const ConvergenceGateError&) {
        }
    }
    std::vector<LevyIndex> indices;
    for (std::int64_t q = 2; q <= 12; ++q) {
        for (std::int64_t p = 1; p < q; ++p) {
            if (std::gcd(p, q) == 1) indices.push_back(resolve_index(p, q, 1, 1));
        }
    }
    for (auto [p, q] : {std::pair<std::int64_t, std::int64_t>{1, 2}, {1, 3}, {2, 3}, {1, 4}}) {
        for (const LevyIndex& idx : enumerate_representations(p, q, 3)) indices.push_back(idx);
    }
    for (auto [p, q, l1, l2] : {std::array<std::int64_t, 4>{1, 2, 2, 1}, {1, 3, 2, 1}, {2, 3, 3, 1},
                                {1, 2, 3, 2}, {3, 4, 2, 1}, {1, 5, 3, 1}}) {
        indices.push_back(resolve_index(p, q, l1, l2));
    }
    double smallest = std::numeric_limits<double>::infinity();
    for (const LevyIndex& idx : indices) {
        try {
            const Representation rep = build_representation(idx);
            for (const Block& b : rep.blocks) smallest = std::min(smallest, block_margin(rep, b));
        } catch (const Error& e) {
            ++failures;
            detail += idx.str() + ": " + e.what() + "; ";
        }
    }
    detail += std::to_string(indices.size()) + " indices, smallest margin " + fmt(smallest);
    return make("convergence gate", 0.0, double(failures), detail);
}

CheckResult check_attraction(double alpha, double y, double tolerance) {
    const double target = std::exp(-std::pow(y, alpha));
    const double e2 = std::fabs(attraction_check(alpha, y, 2).value - target);
    const double e1024 = std::fabs(attraction_check(alpha, y, 1024).value - target);
    CheckResult r = make("attraction alpha=" + fmt(alpha) + " y=" + fmt(y), tolerance, e1024,
                         "error n=2 " + fmt(e2) + ", n=1024 " + fmt(e1024));
    r.pass = r.pass && e1024 < e2;
    return r;
}

CheckResult check_median(double mu) {
    const double mass = smirnov_cdf(mu, 2.0 * mu);
    CheckResult r = make("median mu=" + fmt(mu), 0.05, std::fabs(mass - 0.5),
                         "mass below 2 mu " + fmt(mass));
    return r;
}

std::vector<CheckResult> default_suite() {
    std::vector<CheckResult> out;
    out.push_back(check_gauss_legendre());
    out.push_back(check_gamma_identity());
    out.push_back(check_convergence_gate());
    const double alphas[] = {0.25, 1.0 / 3.0, 0.5, std::numbers::sqrt2 / 2.0, 0.75};
    for (double a : alphas) {
        for (double y : {0.5, 1.0, 2.0, 4.0}) out.push_back(check_laplace(a, y));
    }
    for (double a : alphas) out.push_back(check_normalization(a));
    for (double g : {1.0, 2.0, 3.0, 4.0}) out.push_back(check_smashed_normalization(0.5, g));
    for (double a : {0.5, 0.7}) {
        for (double y : {0.5, 1.0, 2.0}) out.push_back(check_attraction(a, y));
    }
    for (double mu : {0.5, 1.0, 2.0}) out.push_back(check_median(mu));
    return out;
}

}  // namespace levy
