#pragma once

// Command-line front end. `levy <command> [options]`, commands:
//   density   f_alpha on an x grid for one index
//   table     f_alpha on an x grid for several alpha, one column each
//   compare   every representation of a rational alpha against the oracle
//   smash     smashed gamma density, Laplace transform or CDF
//   verify    numerical check suite, JSON report
//   figure1   gamma vs smashed gamma CSV files for gamma = 1..4

#include <iosfwd>
#include <string>
#include <vector>

namespace levy::cli {

enum ExitCode : int {
    Ok = 0,
    Failure = 1,
    OracleFallback = 2,
    Usage = 64,
    DataError = 65,
    IoError = 74,
};

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

}  // namespace levy::cli
