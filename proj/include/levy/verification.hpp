#pragma once

// End-to-end numerical checks shared by the `verify` command and the
// acceptance binary.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "levy/levy_density.hpp"
#include "levy/smashed_gamma.hpp"

namespace levy {

struct CheckResult {
    std::string check;
    double tolerance = 0.0;
    double residual = 0.0;
    bool pass = false;
    std::string detail;
};

/// f_alpha through the residue series when alpha is recognised as an index,
/// otherwise through the oracle.
std::function<double(double)> density_function(double alpha, const DensityConfig& config = {});

/// int_0^inf exp(-y x) f_alpha(x) dx.
double density_laplace(double alpha, double y, const DensityConfig& config = {});

/// int_0^inf f_alpha(x) dx, with the tail beyond x = 50 from tail_mass.
double density_normalization(double alpha, const DensityConfig& config = {});

/// int_0^inf s(x) dx for the smashed gamma density.
double smashed_normalization(const SmashedGammaParams& params, const SmashedConfig& config = {});

/// int_0^t p_LS(u; mu) du by quadrature.
double smirnov_cdf(double mu, double t);

CheckResult check_laplace(double alpha, double y, double tolerance = 1e-7);
CheckResult check_normalization(double alpha, double tolerance = 1e-7);
CheckResult check_smashed_normalization(double alpha, double gamma, double tolerance = 1e-7);
/// Largest multiplication-formula residual over m in 2..max_m on a z grid.
CheckResult check_gauss_legendre(int max_m = 8, double tolerance = 1e-12);
/// negated_gamma_ratio against direct Gamma(beta + 1 - v) on random cases.
CheckResult check_gamma_identity(int cases = 1000, std::uint64_t seed = 20240601,
                                 double tolerance = 1e-12);
/// Margin <= -1 rejected; every assembled spec of a set of indices accepted.
CheckResult check_convergence_gate();
/// Error at n = 1024 below tolerance and below the error at n = 2.
CheckResult check_attraction(double alpha, double y, double tolerance = 1e-2);
/// int_0^(2 mu) p_LS lies in [0.45, 0.55].
CheckResult check_median(double mu);

/// Everything above on its default grid.
std::vector<CheckResult> default_suite();

}  // namespace levy
