#pragma once

// Reference values of f_alpha that share nothing with the residue series:
// numerical inversion of the Laplace transform exp(-s^alpha) along a
// deformed Bromwich contour, and quadrature of the Mellin-Barnes integrand
// along a vertical line.

#include <cstdint>

#include "levy/report.hpp"

namespace levy {

enum class OracleMethod { BromwichReal, MellinLine };

struct OracleConfig {
    /// Method whose value is reported by density_oracle.
    OracleMethod method = OracleMethod::BromwichReal;
    double abs_tol = 1e-12;
    std::uint64_t max_nodes = 400000;
    /// Run the second method and require agreement. Only inner loops of
    /// nested quadratures switch this off.
    bool cross_check = true;
};

/// Bromwich inversion. For alpha < 1/2 this is the real-axis integral
///   (1/pi) int_0^inf exp(-x r - r^a cos(pi a)) sin(r^a sin(pi a)) dr,
/// integrated between consecutive zeros of the sine. For alpha >= 1/2 that
/// integrand grows like exp(r^a |cos(pi a)|) before it decays, so the
/// contour is instead a wedge through the real saddle point.
EvalReport bromwich_density(double alpha, double x, const OracleConfig& cfg = {});

/// (1/pi) int_0^inf Re[Gamma(s)/Gamma(alpha s) x^(alpha s - 1)] dt with
/// s = c + i t, c = (2 - alpha)/(2 alpha).
EvalReport mellin_density(double alpha, double x, const OracleConfig& cfg = {});

/// Both methods (unless cfg.cross_check is off); throws OracleDisagreement when they differ by more than
/// 3 abs_tol. The reported value comes from cfg.method, and abs_err covers
/// the difference.
EvalReport density_oracle(double alpha, double x, const OracleConfig& cfg = {});

/// Leading small-x behaviour of log f_alpha(x) (exact at alpha = 1/2).
double small_x_log_density(double alpha, double x);

/// Argument where the small-x exponent reaches -`depth`; below it f_alpha is
/// at most about exp(-depth) times a modest power of x.
double small_x_cutoff(double alpha, double depth);

/// P(X > big_x) from the convergent large-x series.
double tail_mass(double alpha, double big_x);

/// int_0^inf x^nu f_alpha(x) dx by quadrature plus a termwise tail.
/// Throws DivergentMoment when nu >= alpha.
double moment_oracle(double alpha, double nu, const OracleConfig& cfg = {});

/// Gamma(1 - nu/alpha) / Gamma(1 - nu), the closed form moment_oracle is
/// checked against.
double moment_closed_form(double alpha, double nu);

}  // namespace levy
