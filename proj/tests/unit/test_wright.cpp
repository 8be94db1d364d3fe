#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "golden.hpp"
#include "helpers.hpp"
#include "levy/errors.hpp"
#include "levy/special.hpp"
#include "levy/wright.hpp"

using namespace levy;

TEST_CASE("z = 0 keeps only the first term") {
    const auto spec = make_wright({{0.5, 1.0}, {2.5, 0.3}}, {{1.5, 2.0}}, 0.0);
    const EvalReport r = eval_wright(spec);
    CHECK(r.terms_used == 1);
    CHECK(rel_err(r.value, levy::gamma(0.5) * levy::gamma(2.5) / levy::gamma(1.5)) < 1e-14);
}

TEST_CASE("0Psi0 is the exponential series") {
    const EvalReport r = eval_wright(make_wright({}, {}, 1.0));
    CHECK(rel_err(r.value, std::exp(1.0)) < 1e-14);
    CHECK(r.precision_path == PrecisionPath::Standard);
}

TEST_CASE("1Psi1 with cancelling gammas") {
    const EvalReport r = eval_wright(make_wright({{1.0, 1.0}}, {{1.0, 1.0}}, -0.5));
    CHECK(rel_err(r.value, std::exp(-0.5)) < 1e-14);
}

TEST_CASE("denominator poles give zero terms") {
    // Gamma(n-1) has poles at n = 0, 1; the rest sums to z^2 e^z
    const double z = 0.7;
    const EvalReport r = eval_wright(make_wright({{1.0, 1.0}}, {{-1.0, 1.0}}, z));
    CHECK(rel_err(r.value, z * z * std::exp(z)) < 1e-14);
}

TEST_CASE("numerator pole is an error") {
    // Gamma(-1 + n) at n = 0, 1
    CHECK_THROWS_AS(eval_wright(make_wright({{-1.0, 1.0}}, {{1.0, 1.0}}, 0.1)), PoleError);
}

TEST_CASE("eval_hyp examples") {
    CHECK(rel_err(eval_hyp(HypSpec({}, {}, 0.3)).value, std::exp(0.3)) < 1e-14);
    const EvalReport z0 = eval_hyp(HypSpec({}, {0.5}, 0.0));
    CHECK(z0.value == 1.0);
    CHECK(z0.terms_used <= 4);
    CHECK(rel_err(eval_hyp(HypSpec({}, {0.75, 0.5}, -1.0 / 256.0)).value, golden::hyp0f2_example) <
          1e-15);
}

TEST_CASE("hyp spec invariants") {
    CHECK_THROWS_AS(HypSpec({1.0, 2.0}, {3.0}, 0.1), DomainError);
    CHECK_THROWS_AS(HypSpec({}, {-2.0}, 0.1), DomainError);
}

TEST_CASE("convergence_margin examples") {
    const double r2 = std::numbers::sqrt2;
    const auto spec = make_wright({{-0.5, -1.0}}, {{1.0 - r2, -r2}}, -0.1);
    CHECK(spec.convergence_margin() == doctest::Approx(1.0 - r2).epsilon(1e-15));
    CHECK(make_wright({}, {{1.0, 1.0}}, 0.1).convergence_margin() == 1.0);
}

TEST_CASE("convergence gate rejects margin <= -1") {
    CHECK_THROWS_AS(make_wright({{0.5, 1.0}}, {}, 0.1), ConvergenceGateError);
    CHECK_THROWS_AS(make_wright({{0.5, 2.0}}, {{1.0, 0.5}}, 0.1), ConvergenceGateError);
    CHECK_NOTHROW(make_wright({{0.5, 1.0}}, {{1.0, 0.01}}, 0.1));
    CHECK_THROWS_AS(make_wright({{0.5, 0.0}}, {}, 0.1), DomainError);
}

TEST_CASE("term cap") {
    SeriesConfig cfg;
    cfg.term_cap = 5;
    CHECK_THROWS_AS(eval_wright(make_wright({}, {}, 10.0), cfg), TermCapExceeded);
}

TEST_CASE("heavy cancellation escalates to binary128") {
    const auto spec = make_wright({}, {}, -30.0);
    const EvalReport standard = eval_wright(spec);
    CHECK(standard.precision_loss);
    const EvalReport r = eval_wright_escalating(spec);
    CHECK(r.precision_path == PrecisionPath::Extended);
    CHECK(rel_err(r.value, std::exp(-30.0)) < 1e-7);
    CHECK(r.abs_err_estimate >= std::fabs(r.value - std::exp(-30.0)));
}

TEST_CASE("property: Wright and pFq agree when all steps are 1") {
    std::mt19937_64 rng(kSeed + 10);
    std::uniform_real_distribution<double> par(0.2, 4.0);
    std::uniform_real_distribution<double> arg(-2.0, 2.0);
    std::uniform_int_distribution<int> count(0, 3);
    double worst = 0.0;
    for (int trial = 0; trial < 300; ++trial) {
        const int q = count(rng);
        std::uniform_int_distribution<int> pc(0, q);
        const int p = pc(rng);
        std::vector<double> a(p), b(q);
        std::vector<std::pair<double, double>> up, lo;
        double prefactor = 1.0;
        for (double& v : a) {
            v = par(rng);
            up.push_back({v, 1.0});
            prefactor *= levy::gamma(v);
        }
        for (double& v : b) {
            v = par(rng);
            lo.push_back({v, 1.0});
            prefactor /= levy::gamma(v);
        }
        const double z = arg(rng);
        const EvalReport w = eval_wright(make_wright(up, lo, z));
        const EvalReport h = eval_hyp(HypSpec(a, b, z));
        const double diff = std::fabs(w.value - prefactor * h.value);
        const double allowed = w.abs_err_estimate + std::fabs(prefactor) * h.abs_err_estimate +
                               1e-13 * std::fabs(w.value);
        worst = std::max(worst, diff / allowed);
    }
    CHECK(worst <= 1.0);
}

TEST_CASE("property: error estimate bounds the truncation error") {
    std::mt19937_64 rng(kSeed + 11);
    std::uniform_real_distribution<double> par(0.2, 3.0);
    std::uniform_real_distribution<double> step(0.3, 1.7);
    std::uniform_real_distribution<double> arg(-3.0, 3.0);
    int violations = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto spec = make_wright({{par(rng), step(rng)}}, {{par(rng), step(rng)}, {par(rng), 1.0}},
                                      arg(rng));
        SeriesConfig loose;
        loose.rel_tol = 1e-6;
        SeriesConfig tight;
        tight.rel_tol = 1e-16;
        tight.term_cap = loose.term_cap * 4;
        const EvalReport a = eval_wright(spec, loose);
        const EvalReport b = eval_wright(spec, tight);
        if (std::fabs(a.value - b.value) > a.abs_err_estimate + b.abs_err_estimate) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("property: extended path agrees with an unflagged standard path") {
    std::mt19937_64 rng(kSeed + 12);
    std::uniform_real_distribution<double> par(0.2, 3.0);
    std::uniform_real_distribution<double> step(0.3, 1.7);
    std::uniform_real_distribution<double> arg(-8.0, 8.0);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const double a = par(rng), A = step(rng), b = par(rng), B = step(rng), z = arg(rng);
        // near the gate the terms peak beyond binary64 range
        if (B - A < -0.5) continue;
        const auto spec = make_wright({{a, A}}, {{b, B}}, z);
        const EvalReport s = eval_wright(spec);
        if (s.precision_loss || s.value == 0.0) continue;
        SeriesConfig wide;
        wide.rel_tol = 1e-30;
        const EvalReport e = eval_wright(widen(spec), wide);
        CHECK(std::fabs(s.value - e.value) <= s.abs_err_estimate + e.abs_err_estimate);
        ++checked;
    }
    CHECK(checked > 60);
}
