#include "levy/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include "levy/errors.hpp"

namespace levy::quad {

namespace {

void check(const Result& r, const Options& o, const char* what) {
    if (!std::isfinite(r.value)) {
        throw QuadratureFailure(std::string(what) + ": non-finite result");
    }
    if (o.slack <= 0.0) return;
    // Floor for panels where the integrand has underflowed.
    const double allowed = std::max({o.abs_tol, o.rel_tol * r.l1, 1e-250});
    if (r.error > o.slack * allowed) {
        throw QuadratureFailure(std::string(what) + ": error estimate " +
                                std::to_string(r.error) + " above tolerance " +
                                std::to_string(allowed));
    }
}

}  // namespace

Result integrate(const Integrand& f, double a, double b, const Options& options) {
    using boost::math::quadrature::gauss_kronrod;
    Result r;
    r.value = gauss_kronrod<double, 31>::integrate(f, a, b, options.max_depth, options.rel_tol,
                                                   &r.error, &r.l1);
    check(r, options, "gauss_kronrod");
    return r;
}

Result integrate_log(const Integrand& f, double a, double b, const Options& options) {
    if (!(a > 0.0 && b > a && std::isfinite(b))) {
        throw DomainError("integrate_log: need 0 < a < b < inf");
    }
    auto g = [&f](double u) {
        const double x = std::exp(u);
        return f(x) * x;
    };
    return integrate(g, std::log(a), std::log(b), options);
}

Result integrate_panels(const Integrand& f, const std::vector<double>& cuts, bool log_space,
                        const Options& options) {
    const auto one = [&](std::size_t i, const Options& o) {
        return log_space ? integrate_log(f, cuts[i], cuts[i + 1], o)
                         : integrate(f, cuts[i], cuts[i + 1], o);
    };
    Options coarse = options;
    coarse.max_depth = 0;
    coarse.slack = 0.0;
    std::vector<double> rough(cuts.size(), 0.0);
    double scale = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Result r = one(i, coarse);
        rough[i] = r.l1;
        scale += r.l1;
    }
    Result total;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Options o = options;
        if (rough[i] > 0.0) {
            o.rel_tol = std::clamp(options.rel_tol * scale / rough[i], options.rel_tol, 0.5);
        } else {
            o.rel_tol = 0.5;
        }
        const Result r = one(i, o);
        total.value += r.value;
        total.error += r.error;
        total.l1 += r.l1;
    }
    return total;
}

Result integrate_endpoint_singular(const Integrand& f, double a, double b,
                                   const Options& options) {
    boost::math::quadrature::tanh_sinh<double> rule;
    Result r;
    r.value = rule.integrate(f, a, b, options.rel_tol, &r.error, &r.l1);
    check(r, options, "tanh_sinh");
    return r;
}

}  // namespace levy::quad
