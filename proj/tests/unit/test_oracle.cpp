#include <doctest.h>

#include <cmath>
#include <numbers>

#include "golden.hpp"
#include "helpers.hpp"
#include "levy/errors.hpp"
#include "levy/oracle.hpp"
#include "levy/quadrature.hpp"
#include "levy/verification.hpp"

using namespace levy;

namespace {
double half_closed_form(double x) {
    return std::exp(-0.25 / x) / (2.0 * std::sqrt(std::numbers::pi) * std::pow(x, 1.5));
}
}  // namespace

TEST_CASE("both oracle methods reproduce alpha = 1/2") {
    for (double x : {0.25, 1.0, 10.0}) {
        INFO("x=", x);
        CHECK(rel_err(bromwich_density(0.5, x).value, half_closed_form(x)) < 1e-9);
        CHECK(rel_err(mellin_density(0.5, x).value, half_closed_form(x)) < 1e-9);
    }
    CHECK(rel_err(density_oracle(0.5, 1.0).value, golden::half_at_1) < 1e-10);
}

TEST_CASE("oracle reaches the golden rows") {
    for (const auto& row : golden::density_rows) {
        const double alpha = std::pow(double(row.p) / double(row.q), double(row.l2) / double(row.l1));
        for (std::size_t i = 1; i < golden::xs.size(); ++i) {
            INFO("alpha=", alpha, " x=", golden::xs[i]);
            const EvalReport r = density_oracle(alpha, golden::xs[i]);
            CHECK(std::fabs(r.value - row.f[i]) <= std::max(r.abs_err_estimate, 1e-12) + 1e-9 * row.f[i]);
        }
    }
}

TEST_CASE("mass concentrates at 1 as alpha -> 1") {
    OracleConfig cfg;
    cfg.abs_tol = 1e-10;
    quad::Options opt;
    opt.rel_tol = 1e-8;
    const double mass =
        quad::integrate([&](double x) { return density_oracle(0.99, x, cfg).value; }, 0.9, 1.1, opt).value;
    CHECK(mass >= 0.9);
}

TEST_CASE("fractional moments") {
    CHECK(rel_err(moment_closed_form(0.5, 0.25), golden::moment_half_quarter) < 1e-14);
    CHECK(rel_err(moment_oracle(0.5, 0.25), golden::moment_half_quarter) < 1e-7);
    CHECK(rel_err(moment_oracle(0.3, 0.1), moment_closed_form(0.3, 0.1)) < 1e-7);
    CHECK(rel_err(moment_oracle(0.75, -0.5), moment_closed_form(0.75, -0.5)) < 1e-7);
    CHECK_THROWS_AS(moment_oracle(0.5, 0.5), DivergentMoment);
    CHECK_THROWS_AS(moment_oracle(0.5, 0.7), DivergentMoment);
}

TEST_CASE("tail mass and small-x helpers") {
    // P(X > x) = erf(1/(2 sqrt x)) at alpha = 1/2
    CHECK(rel_err(tail_mass(0.5, 50.0), std::erf(0.5 / std::sqrt(50.0))) < 1e-12);
    CHECK(small_x_log_density(0.5, 0.01) ==
          doctest::Approx(std::log(half_closed_form(0.01))).epsilon(1e-12));
    const double cut = small_x_cutoff(0.5, 40.0);
    CHECK(half_closed_form(cut) < 1e-14);
}

TEST_CASE("property: the two methods agree and are positive") {
    for (double alpha : {0.2, 0.35, 0.5, 0.65, 0.8, 0.9}) {
        for (double x : {0.3, 0.8, 1.5, 4.0, 15.0}) {
            OracleConfig b;
            b.method = OracleMethod::BromwichReal;
            b.cross_check = false;
            OracleConfig m = b;
            m.method = OracleMethod::MellinLine;
            const EvalReport rb = density_oracle(alpha, x, b);
            const EvalReport rm = density_oracle(alpha, x, m);
            INFO("alpha=", alpha, " x=", x);
            CHECK(rb.value >= -rb.abs_err_estimate);
            CHECK(std::fabs(rb.value - rm.value) <= 3e-12 + rb.abs_err_estimate + rm.abs_err_estimate);
        }
    }
}

TEST_CASE("property: Laplace round trip") {
    for (double alpha : {0.25, 0.4, 0.5, 0.6, 0.75}) {
        for (double y : {0.5, 1.0, 2.0, 4.0}) {
            INFO("alpha=", alpha, " y=", y);
            CHECK(std::fabs(density_laplace(alpha, y) - std::exp(-std::pow(y, alpha))) < 1e-7);
        }
    }
}
