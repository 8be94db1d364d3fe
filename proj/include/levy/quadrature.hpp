#pragma once

// Thin wrappers over Boost.Math adaptive quadrature. Every routine returns
// the estimate together with Boost's error estimate and throws
// QuadratureFailure when that estimate misses the requested tolerance by
// more than `slack`.

#include <functional>
#include <vector>

namespace levy::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
    double l1 = 0.0;  ///< integral of |f|, for cancellation checks
};

using Integrand = std::function<double(double)>;

struct Options {
    double rel_tol = 1e-12;
    double abs_tol = 0.0;
    unsigned max_depth = 15;
    /// Failure threshold as a multiple of the tolerance; 0 disables the check.
    double slack = 100.0;
};

/// Adaptive Gauss-Kronrod (31 points) on [a, b]; b may be +infinity.
Result integrate(const Integrand& f, double a, double b, const Options& options = {});

/// Same, after the substitution x = exp(u): integrates f(x) over [a, b]
/// with 0 < a < b < inf. Suited to integrands spread over decades.
Result integrate_log(const Integrand& f, double a, double b, const Options& options = {});

/// Sum over consecutive panels [cuts[i], cuts[i+1]], optionally in log
/// space. A coarse pass estimates the total first, so each panel only has to
/// reach rel_tol of the total rather than of its own contribution.
Result integrate_panels(const Integrand& f, const std::vector<double>& cuts, bool log_space,
                        const Options& options = {});

/// Double-exponential rule for endpoint singularities on finite [a, b].
Result integrate_endpoint_singular(const Integrand& f, double a, double b,
                                   const Options& options = {});

}  // namespace levy::quad
