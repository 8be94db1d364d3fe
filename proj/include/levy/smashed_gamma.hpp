#pragma once

// Levy-smashed gamma family: the law of G * L with G ~ Gamma(gamma, 1) and
// L one-sided stable with Laplace transform exp(-t^alpha), i.e. the Mellin
// convolution
//
//   s(x) = int_0^inf f_alpha(x/t) t^(gamma-2) e^(-t) / Gamma(gamma) dt.

#include "levy/levy_density.hpp"
#include "levy/report.hpp"

namespace levy {

struct SmashedGammaParams {
    double alpha = 0.5;
    double gamma_shape = 1.0;
};

struct LevySmirnovParams {
    double mu = 0.5;
};

struct SmashedConfig {
    DensityConfig density;
    /// Relative tolerance of the convolution and CDF quadratures.
    double quad_rel_tol = 1e-11;
};

/// alpha = 1/2 and alpha = 1 use closed forms; other alpha < 1 the
/// convolution above; alpha > 1 a Wright series flagged experimental.
/// Throws DomainError for x <= 0, gamma <= 0 or alpha <= 0.
EvalReport smashed_density(const SmashedGammaParams& params, double x,
                           const SmashedConfig& config = {});

/// sum_k (-1)^k Gamma(gamma + alpha k) / (k! Gamma(gamma)) y^(alpha k), with
/// a quadrature fallback when the series cannot certify.
EvalReport smashed_laplace(const SmashedGammaParams& params, double y,
                           const SmashedConfig& config = {});

/// int_0^x s(u) du.
double process_cdf(const SmashedGammaParams& params, double x, const SmashedConfig& config = {});

/// P(G L > x) for large x from the termwise tail expansion, truncated at its
/// smallest term (the expansion diverges for alpha > 1/2).
double smashed_tail(const SmashedGammaParams& params, double x);

/// sum_k (-1)^k Gamma(n + alpha k) / (k! Gamma(n)) (y/n)^(alpha k); tends to
/// exp(-y^alpha) as n grows. alpha = 1 returns (1 + y/n)^(-n).
EvalReport attraction_check(double alpha, double y, int n);

/// sqrt(mu) / (sqrt(2 pi) t^(3/2)) exp(-mu / (2 t)).
double levy_smirnov_pdf(const LevySmirnovParams& params, double t);

/// int_0^x s_{t1}(u) s_{t2}(x - u) du, the density of the sum of
/// independent marginals with shapes t1 and t2.
double convolve_marginals(double alpha, double t1, double t2, double x,
                          const SmashedConfig& config = {});

}  // namespace levy
