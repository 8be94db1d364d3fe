// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "levy/levy_density.hpp"
#include "levy/oracle.hpp"
#include "levy/smashed_gamma.hpp"
#include "levy/verification.hpp"
#include "levy/wright.hpp"

using namespace levy;

namespace {

struct Outcome {
    bool pass = true;
    double worst = 0.0;
    double tolerance = 0.0;
    std::string note;
};

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = lo * std::pow(hi / lo, double(i) / double(n - 1));
    return xs;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

double half_closed_form(double x) {
    return std::exp(-0.25 / x) / (2.0 * std::sqrt(std::numbers::pi) * std::pow(x, 1.5));
}

Outcome anchor() {
    Outcome o{true, 0.0, 1e-12, ""};
    const Representation rep = build_representation(resolve_index(1, 2, 1, 1));
    for (double x : log_grid(0.05, 100.0, 50)) o.worst = std::max(o.worst, rel(density(rep, x).value, half_closed_form(x)));
    o.pass = o.worst <= o.tolerance;
    return o;
}

Outcome equivalence() {
    Outcome o{true, 0.0, 1e-10, ""};
    const Representation a = build_representation(resolve_index(1, 2, 1, 1));
    const Representation b = build_representation(resolve_index(1, 4, 2, 1));
    for (double x : log_grid(0.1, 50.0, 50)) o.worst = std::max(o.worst, rel(density(b, x).value, density(a, x).value));
    // exp(-z) = 0F1(;1/2;z^2/4) - z 0F1(;3/2;z^2/4), z = 1/(4x)
    double identity = 0.0;
    for (double x : log_grid(0.1, 50.0, 20)) {
        const double z = 0.25 / x;
        const double rhs = eval_hyp(HypSpec({}, {0.5}, z * z / 4.0)).value -
                           z * eval_hyp(HypSpec({}, {1.5}, z * z / 4.0)).value;
        identity = std::max(identity, rel(rhs, std::exp(-z)));
    }
    o.pass = o.worst <= o.tolerance && identity <= 1e-12;
    o.note = "0F1 identity worst=" + sci(identity) + " tol=1e-12";
    return o;
}

const double kAlphas[] = {0.25, 1.0 / 3.0, 0.5, 1.0 / std::numbers::sqrt2, 0.75};

Outcome laplace() {
    Outcome o{true, 0.0, 1e-7, ""};
    for (double alpha : kAlphas) {
        for (double y : {0.5, 1.0, 2.0, 4.0}) {
            const CheckResult r = check_laplace(alpha, y, o.tolerance);
            o.worst = std::max(o.worst, r.residual);
            o.pass = o.pass && r.pass;
        }
    }
    return o;
}

Outcome against_oracle(int p, int q, int l1, int l2, double lo, double hi) {
    Outcome o{true, 0.0, 1e-8, ""};
    const Representation rep = build_representation(resolve_index(p, q, l1, l2));
    int fallback = 0;
    for (double x : log_grid(lo, hi, 25)) {
        const EvalReport s = density(rep, x);
        if (s.precision_path == PrecisionPath::Oracle) ++fallback;
        o.worst = std::max(o.worst, rel(s.value, density_oracle(rep.index.alpha, x).value));
    }
    o.pass = o.worst <= o.tolerance;
    o.note = "oracle-fallback rows=" + std::to_string(fallback);
    return o;
}

Outcome normalization() {
    Outcome o{true, 0.0, 1e-7, ""};
    for (double alpha : kAlphas) {
        const CheckResult r = check_normalization(alpha, o.tolerance);
        o.worst = std::max(o.worst, r.residual);
        o.pass = o.pass && r.pass;
    }
    return o;
}

Outcome smashed_rows() {
    Outcome o{true, 0.0, 1e-12, ""};
    const auto row = [](int g, double x) {
        const double w = 1.0 + 4.0 * x;
        const double c[] = {2.0, 12.0, 60.0, 280.0};
        return c[g - 1] * std::pow(x, g - 1) * std::pow(w, -(g + 0.5));
    };
    double mass = 0.0;
    for (int g = 1; g <= 4; ++g) {
        for (double x : log_grid(0.01, 100.0, 60)) o.worst = std::max(o.worst, rel(smashed_density({0.5, double(g)}, x).value, row(g, x)));
        const CheckResult r = check_smashed_normalization(0.5, g, 1e-7);
        mass = std::max(mass, r.residual);
        o.pass = o.pass && r.pass;
    }
    o.pass = o.pass && o.worst <= o.tolerance;
    o.note = "normalization worst=" + sci(mass) + " tol=1e-7";
    return o;
}

Outcome attraction() {
    Outcome o{true, 0.0, 1e-2, ""};
    for (double alpha : {0.5, 0.7}) {
        for (double y : {0.5, 1.0, 2.0}) {
            const CheckResult r = check_attraction(alpha, y, o.tolerance);
            o.worst = std::max(o.worst, r.residual);
            o.pass = o.pass && r.pass;
        }
    }
    return o;
}

Outcome median() {
    Outcome o{true, 0.0, 0.05, ""};
    for (double mu : {0.5, 1.0, 2.0}) {
        const CheckResult r = check_median(mu);
        o.worst = std::max(o.worst, std::fabs(smirnov_cdf(mu, 2.0 * mu) - 0.5));
        o.pass = o.pass && r.pass;
    }
    return o;
}

Outcome identities() {
    Outcome o{true, 0.0, 1e-12, ""};
    const CheckResult gl = check_gauss_legendre(8, 1e-12);
    const CheckResult id = check_gamma_identity(1000, 20240601, 1e-12);
    const CheckResult gate = check_convergence_gate();
    o.worst = std::max(gl.residual, id.residual);
    o.pass = gl.pass && id.pass && gate.pass;
    o.note = "gate " + std::string(gate.pass ? "ok" : "FAILED: " + gate.detail);
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        const char* name;
        double budget_s;  // 0: no runtime bound
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "closed-form anchor alpha=1/2", 1.0, anchor},
        {2, "representation equivalence alpha=1/2", 1.0, equivalence},
        {3, "Laplace identity", 30.0, laplace},
        {4, "irrational index alpha=1/sqrt2 vs oracle", 20.0, [] { return against_oracle(1, 2, 2, 1, 0.2, 20.0); }},
        {5, "three-block alpha=1/4 vs oracle", 10.0, [] { return against_oracle(1, 4, 1, 1, 0.5, 20.0); }},
        {6, "normalization", 0.0, normalization},
        {7, "smashed gamma closed forms", 0.0, smashed_rows},
        {8, "attraction limit", 0.0, attraction},
        {9, "Levy-Smirnov median", 0.0, median},
        {10, "identity suite", 0.0, identities},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.note = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.budget_s == 0.0 || secs < c.budget_s;
        const bool pass = o.pass && in_time;
        if (!pass) ++failures;
        std::printf("criterion %2d %s  %s  worst=%.3g tol=%.3g time=%.2fs%s%s%s\n", c.number,
                    pass ? "PASS" : "FAIL", c.name, o.worst, o.tolerance, secs,
                    c.budget_s > 0.0 ? (in_time ? " (within budget)" : " (OVER BUDGET)") : "",
                    o.note.empty() ? "" : "  ", o.note.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
