#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "golden.hpp"
#include "levy/cli.hpp"

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = levy::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::vector<std::string> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(cell);
        rows.push_back(row);
    }
    return rows;
}

std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("levy_cli_" + name + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("cli: density example") {
    const Outcome o = run({"density", "--p", "1", "--q", "2", "--l1", "1", "--l2", "1", "--x", "1"});
    CHECK(o.code == 0);
    const auto rows = parse_csv(o.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"x", "f", "abs_err", "terms", "precision_path"});
    CHECK(std::stod(rows[1][1]) == doctest::Approx(golden::half_at_1).epsilon(1e-15));
    CHECK(rows[1][4] == "standard");
}

TEST_CASE("cli: second representation in JSON") {
    const Outcome o = run({"density", "--alpha-rational", "1/2", "--rep", "2", "--x", "0.5", "--x", "2",
                           "--format", "json"});
    REQUIRE(o.code == 0);
    const auto j = nlohmann::json::parse(o.out);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["f"].get<double>() == doctest::Approx(golden::density_rows[4].f[1]).epsilon(1e-12));
}

TEST_CASE("cli: csv and json agree bit for bit") {
    const std::vector<std::string> base = {"density", "--p", "1", "--q", "3", "--min", "0.5",
                                           "--max", "20", "--count", "7", "--scale", "log"};
    const Outcome csv = run(base);
    auto json_args = base;
    json_args.insert(json_args.end(), {"--format", "json"});
    const Outcome json = run(json_args);
    REQUIRE(csv.code == 0);
    REQUIRE(json.code == 0);
    const auto rows = parse_csv(csv.out);
    const auto j = nlohmann::json::parse(json.out);
    REQUIRE(rows.size() == j.size() + 1);
    for (std::size_t i = 0; i < j.size(); ++i) {
        CHECK(std::stod(rows[i + 1][0]) == j[i]["x"].get<double>());
        CHECK(std::stod(rows[i + 1][1]) == j[i]["f"].get<double>());
    }
}

TEST_CASE("cli: compare three forms of 1/2") {
    const Outcome o = run({"compare", "--alpha-rational", "1/2", "--forms", "3", "--x", "0.5", "--x", "3"});
    CHECK(o.code == 0);
    const auto rows = parse_csv(o.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].back() == "true");
    CHECK(rows[2].back() == "true");
}

TEST_CASE("cli: table and smash") {
    const Outcome t = run({"table", "--alpha", "0.5", "--alpha", "0.25", "--x", "1"});
    CHECK(t.code == 0);
    CHECK(parse_csv(t.out)[0].size() == 3);

    const Outcome s = run({"smash", "--alpha", "0.5", "--gamma", "1", "--x", "1"});
    REQUIRE(s.code == 0);
    CHECK(std::stod(parse_csv(s.out)[1][1]) == doctest::Approx(2.0 / std::pow(5.0, 1.5)).epsilon(1e-14));

    const Outcome c = run({"smash", "--alpha", "0.5", "--gamma", "1", "--quantity", "cdf", "--x", "0.75"});
    REQUIRE(c.code == 0);
    CHECK(std::stod(parse_csv(c.out)[1][1]) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("cli: usage and data errors") {
    CHECK(run({}).code == 64);
    CHECK(run({"density", "--p", "1", "--q", "2", "--bogus"}).code == 64);
    CHECK(run({"density", "--p", "1", "--q", "2"}).code == 64);  // empty grid
    CHECK(run({"density", "--p", "3", "--q", "2", "--x", "1"}).code == 65);
    CHECK(run({"density", "--p", "1", "--q", "2", "--x", "-1"}).code == 65);
    CHECK(run({"smash", "--quantity", "moments", "--x", "1"}).code == 64);
    CHECK(run({"density", "--help"}).code == 0);
}

TEST_CASE("cli: verify single checks") {
    const Outcome o = run({"verify", "--check", "laplace", "--alpha", "0.5", "--y", "2"});
    CHECK(o.code == 0);
    const auto j = nlohmann::json::parse(o.out);
    CHECK(j["pass"].get<bool>());
    REQUIRE(j["checks"].size() == 1);
    CHECK(j["checks"][0]["residual"].get<double>() < 1e-7);

    CHECK(run({"verify", "--check", "median", "--mu", "2"}).code == 0);
    CHECK(run({"verify", "--check", "gate"}).code == 0);

    const Outcome bad = run({"verify", "--check", "laplace", "--alpha", "0.5", "--y", "2", "--tolerance", "1e-30"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("check failed") != std::string::npos);
}

TEST_CASE("cli: figure1 writes four tables") {
    const auto dir = temp_dir("fig");
    const Outcome o = run({"figure1", "--output-dir", dir.string(), "--points", "20"});
    REQUIRE(o.code == 0);
    for (int g = 1; g <= 4; ++g) {
        std::ifstream in(dir / ("figure1_gamma" + std::to_string(g) + ".csv"));
        REQUIRE(in.good());
        std::stringstream ss;
        ss << in.rdbuf();
        const auto rows = parse_csv(ss.str());
        CHECK(rows.size() == 21);
        CHECK(rows[0] == std::vector<std::string>{"x", "gamma_pdf", "smashed_pdf"});
    }
    std::filesystem::remove_all(dir);
    CHECK(run({"figure1", "--output-dir", "/proc/no/such/dir"}).code == 74);
    CHECK(run({"density", "--p", "1", "--q", "2", "--x", "1", "-o", "/proc/no/such/file"}).code == 74);
}

TEST_CASE("cli: installed binary") {
    const auto dir = temp_dir("bin");
    const std::string out = (dir / "out.csv").string();
    const std::string cmd = std::string(LEVY_TOOL_PATH) + " density --p 1 --q 2 --x 1 -o " + out;
    CHECK(std::system(cmd.c_str()) == 0);
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("0.2196956447338612") != std::string::npos);
    const std::string bad = std::string(LEVY_TOOL_PATH) + " density --p 1 --q 2 > /dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(bad.c_str())) == 64);
    std::filesystem::remove_all(dir);
}
