#ifndef CONIC_CLI_HPP
#define CONIC_CLI_HPP

#include <complex>
#include <ostream>
#include <string_view>

namespace conic::cli
{

enum ExitCode : int
{
    ok = 0,
    invalid_input = 1,
    numerical_failure = 2,
    unsupported = 3,
};

/// Entry point of the `conic` tool. Reports go to out, diagnostics to err.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// Accepts "x+yi", "x-yi", "yi", "x" and "x,y".
std::complex<double> parse_complex(std::string_view text);

}

#endif
