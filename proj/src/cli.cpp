#include "levy/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>
#include <variant>

#include "levy/errors.hpp"
#include "levy/levy_density.hpp"
#include "levy/smashed_gamma.hpp"
#include "levy/verification.hpp"

namespace levy::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::monostate, double, std::int64_t, std::string, bool>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string cell_text(const Cell& c) {
    struct {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(const std::string& v) const { return v; }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
    } visit;
    return std::visit(visit, c);
}

nlohmann::json cell_json(const Cell& c) {
    struct {
        nlohmann::json operator()(std::monostate) const { return nullptr; }
        nlohmann::json operator()(double v) const {
            return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(format_double(v));
        }
        nlohmann::json operator()(std::int64_t v) const { return v; }
        nlohmann::json operator()(const std::string& v) const { return v; }
        nlohmann::json operator()(bool v) const { return v; }
    } visit;
    return std::visit(visit, c);
}

void write_csv(const Table& t, std::ostream& os) {
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        os << (i ? "," : "") << csv_field(t.header[i]);
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << csv_field(cell_text(row[i]));
        }
        os << '\n';
    }
}

nlohmann::json table_json(const Table& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[t.header[i]] = cell_json(row[i]);
        rows.push_back(std::move(obj));
    }
    return rows;
}

// Destination chosen by --output; stdout otherwise.
struct Sink {
    std::string path;
    std::string format = "csv";

    void emit(const Table& t, std::ostream& out) const {
        std::ofstream file;
        std::ostream* os = &out;
        if (!path.empty()) {
            file.open(path);
            if (!file) throw IoFailure("cannot open " + path + " for writing");
            os = &file;
        }
        if (format == "json") {
            *os << table_json(t).dump(2) << '\n';
        } else {
            write_csv(t, *os);
        }
        os->flush();
        if (!*os) throw IoFailure("write failed" + (path.empty() ? std::string() : ": " + path));
    }
};

void add_sink(CLI::App* cmd, Sink& sink) {
    cmd->add_option("--format", sink.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("-o,--output", sink.path, "output file (default stdout)");
}

struct GridSpec {
    std::vector<double> xs;
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    std::string scale = "log";

    std::vector<double> build() const {
        std::vector<double> g = xs;
        if (g.empty()) {
            if (count < 1) throw UsageError("grid needs --x values or --count >= 1");
            if (count == 1) {
                g.push_back(min);
            } else {
                if (!(min < max)) throw UsageError("grid needs --min < --max");
                if (scale == "log" && !(min > 0.0)) throw UsageError("log grid needs --min > 0");
                for (int i = 0; i < count; ++i) {
                    const double f = double(i) / (count - 1);
                    g.push_back(scale == "log" ? min * std::pow(max / min, f) : min + (max - min) * f);
                }
                g.back() = max;
            }
        }
        std::sort(g.begin(), g.end());
        return g;
    }
};

void add_grid(CLI::App* cmd, GridSpec& grid, const std::string& name = "x") {
    cmd->add_option("--" + name, grid.xs, "explicit " + name + " values");
    cmd->add_option("--min", grid.min, "grid start");
    cmd->add_option("--max", grid.max, "grid end");
    cmd->add_option("--count", grid.count, "grid points");
    cmd->add_option("--scale", grid.scale, "lin or log")->check(CLI::IsMember({"lin", "log"}));
}

struct IndexSpec {
    std::optional<std::int64_t> p, q;
    std::int64_t l1 = 1, l2 = 1;
    std::string alpha_rational;
    int rep = 1;
    std::optional<double> alpha;
};

void add_index(CLI::App* cmd, IndexSpec& idx) {
    cmd->add_option("--p", idx.p);
    cmd->add_option("--q", idx.q);
    cmd->add_option("--l1", idx.l1);
    cmd->add_option("--l2", idx.l2);
    cmd->add_option("--alpha-rational", idx.alpha_rational, "alpha as a/b");
    cmd->add_option("--rep", idx.rep, "1-based representation number for --alpha-rational");
    cmd->add_option("--alpha", idx.alpha, "alpha as a real number");
}

std::pair<std::int64_t, std::int64_t> parse_fraction(const std::string& s) {
    const auto slash = s.find('/');
    std::int64_t a = 0, b = 0;
    const char* end = s.data() + s.size();
    const auto r1 = std::from_chars(s.data(), slash == std::string::npos ? end : s.data() + slash, a);
    if (slash == std::string::npos || r1.ec != std::errc() || r1.ptr != s.data() + slash) {
        throw UsageError("expected a/b, got '" + s + "'");
    }
    const auto r2 = std::from_chars(s.data() + slash + 1, end, b);
    if (r2.ec != std::errc() || r2.ptr != end || b <= 0) throw UsageError("expected a/b, got '" + s + "'");
    if (!(a > 0 && a < b)) throw DomainError("alpha = " + s + " is outside (0, 1)");
    const std::int64_t g = std::gcd(a, b);
    return {a / g, b / g};
}

// Series representation, or only alpha when none applies (oracle rows).
struct Target {
    std::optional<Representation> rep;
    double alpha = 0.0;
    std::string label;
};

Target resolve(const IndexSpec& s) {
    const int given = int(s.p.has_value() || s.q.has_value()) + int(!s.alpha_rational.empty()) +
                      int(s.alpha.has_value());
    if (given != 1) throw UsageError("give exactly one of --p/--q, --alpha-rational, --alpha");
    Target t;
    if (s.p || s.q) {
        if (!s.p || !s.q) throw UsageError("--p and --q go together");
        t.rep = build_representation(resolve_index(*s.p, *s.q, s.l1, s.l2));
    } else if (!s.alpha_rational.empty()) {
        if (s.rep < 1) throw UsageError("--rep starts at 1");
        const auto [a, b] = parse_fraction(s.alpha_rational);
        const auto forms = enumerate_representations(a, b, s.rep);
        if (int(forms.size()) < s.rep) {
            throw DomainError("alpha = " + s.alpha_rational + " has only " +
                              std::to_string(forms.size()) + " representations");
        }
        t.rep = build_representation(forms[s.rep - 1]);
    } else {
        const double a = *s.alpha;
        if (!(a > 0.0 && a < 1.0)) throw DomainError("alpha must lie in (0, 1)");
        if (const auto idx = approximate_index(a)) t.rep = build_representation(*idx);
        t.alpha = a;
    }
    if (t.rep) {
        t.alpha = t.rep->index.alpha;
        t.label = t.rep->index.str();
    } else {
        t.label = "alpha=" + format_double(t.alpha);
    }
    return t;
}

EvalReport evaluate(const Target& t, double x, const DensityConfig& cfg) {
    if (t.rep) return density(*t.rep, x, cfg);
    if (!(x > 0.0)) throw DomainError("density: x must be positive and finite");
    EvalReport r = density_oracle(t.alpha, x, cfg.oracle);
    r.precision_path = PrecisionPath::Oracle;
    return r;
}

struct Tuning {
    double target_rel = 1e-12;
    double extended_rel = 1e-8;
    double rel_tol = 1e-13;
    std::uint64_t term_cap = 10000;
    double oracle_tol = 1e-12;
    bool no_fallback = false;
    unsigned threads = 0;

    DensityConfig config() const {
        for (double v : {target_rel, extended_rel, rel_tol, oracle_tol}) {
            if (!(v > 0.0)) throw UsageError("tolerances must be positive");
        }
        if (term_cap < 1) throw UsageError("--term-cap must be positive");
        DensityConfig c;
        c.target_rel = target_rel;
        c.extended_rel = extended_rel;
        c.series.rel_tol = rel_tol;
        c.series.term_cap = term_cap;
        c.oracle.abs_tol = oracle_tol;
        c.oracle_fallback = !no_fallback;
        return c;
    }
};

void add_tuning(CLI::App* cmd, Tuning& t) {
    cmd->add_option("--target-rel", t.target_rel, "binary64 acceptance bar");
    cmd->add_option("--extended-rel", t.extended_rel, "binary128 acceptance bar");
    cmd->add_option("--rel-tol", t.rel_tol, "series stopping tolerance");
    cmd->add_option("--term-cap", t.term_cap, "series term cap");
    cmd->add_option("--oracle-tol", t.oracle_tol, "oracle absolute tolerance");
    cmd->add_flag("--no-fallback", t.no_fallback, "fail instead of using the oracle");
    cmd->add_option("--threads", t.threads, "worker threads (default: hardware)");
}

// fn(i) for i < n on a bounded pool; results keep index order and the
// first failing index rethrows.
template <class R, class F>
std::vector<R> parallel_map(std::size_t n, unsigned threads, F fn) {
    std::vector<R> out(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    unsigned k = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    k = std::min<unsigned>({k, 16u, unsigned(std::max<std::size_t>(n, 1))});
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < k; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

int cmd_density(const IndexSpec& idx, const GridSpec& grid, const Tuning& tuning, const Sink& sink,
                std::ostream& out) {
    const Target target = resolve(idx);
    const DensityConfig cfg = tuning.config();
    const auto xs = grid.build();
    const auto reports = parallel_map<EvalReport>(
        xs.size(), tuning.threads, [&](std::size_t i) { return evaluate(target, xs[i], cfg); });
    Table t{{"x", "f", "abs_err", "terms", "precision_path"}, {}};
    bool fallback = false;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const EvalReport& r = reports[i];
        fallback = fallback || r.precision_path == PrecisionPath::Oracle;
        t.rows.push_back({xs[i], r.value, r.abs_err_estimate, std::int64_t(r.terms_used),
                          std::string(to_string(r.precision_path))});
    }
    sink.emit(t, out);
    return fallback ? OracleFallback : Ok;
}

int cmd_table(const std::vector<double>& alphas, const GridSpec& grid, const Tuning& tuning,
              const Sink& sink, std::ostream& out) {
    if (alphas.empty()) throw UsageError("table needs at least one --alpha");
    std::vector<Target> targets;
    for (double a : alphas) {
        IndexSpec s;
        s.alpha = a;
        targets.push_back(resolve(s));
    }
    const DensityConfig cfg = tuning.config();
    const auto xs = grid.build();
    const std::size_t m = targets.size();
    const auto reports = parallel_map<EvalReport>(xs.size() * m, tuning.threads, [&](std::size_t k) {
        return evaluate(targets[k % m], xs[k / m], cfg);
    });
    Table t;
    t.header.push_back("x");
    for (const Target& tg : targets) t.header.push_back("f[" + format_double(tg.alpha) + "]");
    bool fallback = false;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::vector<Cell> row{xs[i]};
        for (std::size_t j = 0; j < m; ++j) {
            const EvalReport& r = reports[i * m + j];
            fallback = fallback || r.precision_path == PrecisionPath::Oracle;
            row.push_back(r.value);
        }
        t.rows.push_back(std::move(row));
    }
    sink.emit(t, out);
    return fallback ? OracleFallback : Ok;
}

int cmd_compare(const std::string& fraction, int forms, const GridSpec& grid, const Tuning& tuning,
                const Sink& sink, std::ostream& out) {
    if (fraction.empty()) throw UsageError("compare needs --alpha-rational");
    if (forms < 1) throw UsageError("--forms must be positive");
    const auto [a, b] = parse_fraction(fraction);
    std::vector<Representation> reps;
    for (const LevyIndex& idx : enumerate_representations(a, b, forms)) {
        reps.push_back(build_representation(idx));
    }
    const double alpha = double(a) / double(b);
    const DensityConfig cfg = tuning.config();
    const auto xs = grid.build();
    const std::size_t m = reps.size() + 1;  // last column: oracle
    const auto reports = parallel_map<EvalReport>(xs.size() * m, tuning.threads, [&](std::size_t k) {
        const double x = xs[k / m];
        const std::size_t j = k % m;
        return j < reps.size() ? density(reps[j], x, cfg) : density_oracle(alpha, x, cfg.oracle);
    });
    Table t;
    t.header.push_back("x");
    for (const auto& r : reps) t.header.push_back(r.index.str());
    for (const char* h : {"oracle", "max_dev", "tolerance", "within"}) t.header.push_back(h);
    bool all_within = true;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::vector<Cell> row{xs[i]};
        double lo = std::numeric_limits<double>::infinity(), hi = -lo, err = 0.0, mag = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const EvalReport& r = reports[i * m + j];
            row.push_back(r.value);
            lo = std::min(lo, r.value);
            hi = std::max(hi, r.value);
            err += r.abs_err_estimate;
            mag = std::max(mag, std::fabs(r.value));
        }
        // Combined estimates plus a few ulps of rounding in the comparison itself.
        const double tol = err + 16.0 * std::numeric_limits<double>::epsilon() * mag;
        const bool within = hi - lo <= tol;
        all_within = all_within && within;
        row.push_back(hi - lo);
        row.push_back(tol);
        row.push_back(within);
        t.rows.push_back(std::move(row));
    }
    sink.emit(t, out);
    return all_within ? Ok : Failure;
}

int cmd_smash(double alpha, double gamma, const std::string& quantity, const GridSpec& grid,
              const Tuning& tuning, const Sink& sink, std::ostream& out) {
    const SmashedGammaParams params{alpha, gamma};
    SmashedConfig cfg;
    cfg.density = tuning.config();
    const auto xs = grid.build();
    const auto reports = parallel_map<EvalReport>(xs.size(), tuning.threads, [&](std::size_t i) {
        if (quantity == "laplace") return smashed_laplace(params, xs[i], cfg);
        if (quantity == "cdf") {
            EvalReport r;
            r.value = process_cdf(params, xs[i], cfg);
            r.abs_err_estimate = std::numeric_limits<double>::quiet_NaN();
            r.experimental = alpha > 1.0;
            return r;
        }
        return smashed_density(params, xs[i], cfg);
    });
    Table t{{quantity == "laplace" ? "y" : "x", quantity, "abs_err", "experimental"}, {}};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const EvalReport& r = reports[i];
        const Cell err = std::isnan(r.abs_err_estimate) ? Cell{} : Cell{r.abs_err_estimate};
        t.rows.push_back({xs[i], r.value, err, r.experimental});
    }
    sink.emit(t, out);
    return Ok;
}

struct VerifySpec {
    std::string check = "all";
    double alpha = 0.5;
    double y = 1.0;
    double mu = 1.0;
    double gamma = 1.0;
    std::optional<double> tolerance;
    int cases = 1000;
    int max_m = 8;
};

int cmd_verify(const VerifySpec& v, const std::string& path, std::ostream& out, std::ostream& err) {
    if (v.tolerance && !(*v.tolerance > 0.0)) throw UsageError("--tolerance must be positive");
    const auto tol = [&](double d) { return v.tolerance.value_or(d); };
    std::vector<CheckResult> results;
    if (v.check == "all") {
        results = default_suite();
    } else if (v.check == "laplace") {
        results.push_back(check_laplace(v.alpha, v.y, tol(1e-7)));
    } else if (v.check == "normalization") {
        results.push_back(check_normalization(v.alpha, tol(1e-7)));
    } else if (v.check == "smashed-normalization") {
        results.push_back(check_smashed_normalization(v.alpha, v.gamma, tol(1e-7)));
    } else if (v.check == "gauss-legendre") {
        results.push_back(check_gauss_legendre(v.max_m, tol(1e-12)));
    } else if (v.check == "identity") {
        results.push_back(check_gamma_identity(v.cases, 20240601, tol(1e-12)));
    } else if (v.check == "gate") {
        results.push_back(check_convergence_gate());
    } else if (v.check == "attraction") {
        results.push_back(check_attraction(v.alpha, v.y, tol(1e-2)));
    } else if (v.check == "median") {
        results.push_back(check_median(v.mu));
    }
    nlohmann::json checks = nlohmann::json::array();
    bool pass = true;
    for (const CheckResult& r : results) {
        checks.push_back({{"check", r.check},
                          {"tolerance", r.tolerance},
                          {"residual", std::isfinite(r.residual) ? nlohmann::json(r.residual)
                                                                 : nlohmann::json(nullptr)},
                          {"pass", r.pass},
                          {"detail", r.detail}});
        if (!r.pass) {
            pass = false;
            err << "check failed: " << r.check << " (" << r.detail << ")\n";
        }
    }
    const nlohmann::json report = {{"checks", checks}, {"pass", pass}};
    if (path.empty()) {
        out << report.dump(2) << '\n';
    } else {
        std::ofstream f(path);
        if (!f) throw IoFailure("cannot open " + path + " for writing");
        f << report.dump(2) << '\n';
        if (!f) throw IoFailure("write failed: " + path);
    }
    return pass ? Ok : Failure;
}

int cmd_figure1(const std::string& dir, int points, double x_max, std::ostream& out) {
    if (points < 1) throw UsageError("--points must be positive");
    if (!(x_max > 0.0)) throw UsageError("--xmax must be positive");
    for (int g = 1; g <= 4; ++g) {
        const SmashedGammaParams params{0.5, double(g)};
        const SmashedGammaParams gamma_law{1.0, double(g)};
        Table t{{"x", "gamma_pdf", "smashed_pdf"}, {}};
        for (int i = 1; i <= points; ++i) {
            const double x = x_max * i / points;
            t.rows.push_back({x, smashed_density(gamma_law, x).value, smashed_density(params, x).value});
        }
        const std::string path =
            (std::filesystem::path(dir) / ("figure1_gamma" + std::to_string(g) + ".csv")).string();
        Sink{path, "csv"}.emit(t, out);
        out << path << '\n';
    }
    return Ok;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"One-sided stable densities from residue series", "levy"};
    app.require_subcommand(1);

    IndexSpec idx;
    GridSpec grid;
    Tuning tuning;
    Sink sink;

    auto* density_cmd = app.add_subcommand("density", "f_alpha on an x grid");
    add_index(density_cmd, idx);
    add_grid(density_cmd, grid);
    add_tuning(density_cmd, tuning);
    add_sink(density_cmd, sink);

    std::vector<double> table_alphas;
    auto* table_cmd = app.add_subcommand("table", "f_alpha for several alpha, one column each");
    table_cmd->add_option("--alpha", table_alphas, "alpha values")->required();
    add_grid(table_cmd, grid);
    add_tuning(table_cmd, tuning);
    add_sink(table_cmd, sink);

    std::string fraction;
    int forms = 3;
    auto* compare_cmd = app.add_subcommand("compare", "representations of one rational alpha vs the oracle");
    compare_cmd->add_option("--alpha-rational", fraction, "alpha as a/b")->required();
    compare_cmd->add_option("--forms", forms, "number of representations");
    add_grid(compare_cmd, grid);
    add_tuning(compare_cmd, tuning);
    add_sink(compare_cmd, sink);

    double s_alpha = 0.5, s_gamma = 1.0;
    std::string quantity = "density";
    auto* smash_cmd = app.add_subcommand("smash", "smashed gamma density, Laplace transform or CDF");
    smash_cmd->add_option("--alpha", s_alpha);
    smash_cmd->add_option("--gamma", s_gamma);
    smash_cmd->add_option("--quantity", quantity)->check(CLI::IsMember({"density", "laplace", "cdf"}));
    add_grid(smash_cmd, grid);
    add_tuning(smash_cmd, tuning);
    add_sink(smash_cmd, sink);

    VerifySpec verify;
    std::string verify_path;
    auto* verify_cmd = app.add_subcommand("verify", "numerical check suite (JSON report)");
    verify_cmd->add_option("--check", verify.check)
        ->check(CLI::IsMember({"all", "laplace", "normalization", "smashed-normalization",
                               "gauss-legendre", "identity", "gate", "attraction", "median"}));
    verify_cmd->add_option("--alpha", verify.alpha);
    verify_cmd->add_option("--y", verify.y);
    verify_cmd->add_option("--mu", verify.mu);
    verify_cmd->add_option("--gamma", verify.gamma);
    verify_cmd->add_option("--tolerance", verify.tolerance);
    verify_cmd->add_option("--cases", verify.cases);
    verify_cmd->add_option("--max-m", verify.max_m);
    verify_cmd->add_option("-o,--output", verify_path);

    std::string fig_dir = ".";
    int fig_points = 500;
    double fig_xmax = 10.0;
    auto* fig_cmd = app.add_subcommand("figure1", "gamma vs smashed gamma tables, gamma = 1..4");
    fig_cmd->add_option("--output-dir", fig_dir);
    fig_cmd->add_option("--points", fig_points);
    fig_cmd->add_option("--xmax", fig_xmax);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Ok : Usage;
    }

    try {
        if (*density_cmd) return cmd_density(idx, grid, tuning, sink, out);
        if (*table_cmd) return cmd_table(table_alphas, grid, tuning, sink, out);
        if (*compare_cmd) return cmd_compare(fraction, forms, grid, tuning, sink, out);
        if (*smash_cmd) return cmd_smash(s_alpha, s_gamma, quantity, grid, tuning, sink, out);
        if (*verify_cmd) return cmd_verify(verify, verify_path, out, err);
        if (*fig_cmd) return cmd_figure1(fig_dir, fig_points, fig_xmax, out);
    } catch (const UsageError& e) {
        err << "usage: " << e.what() << '\n';
        return Usage;
    } catch (const IoFailure& e) {
        err << "io: " << e.what() << '\n';
        return IoError;
    } catch (const DomainError& e) {
        err << "domain: " << e.what() << '\n';
        return DataError;
    } catch (const PoleError& e) {
        err << "domain: " << e.what() << '\n';
        return DataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return Failure;
    }
    return Usage;
}

}  // namespace levy::cli
