#pragma once

#include <stdexcept>
#include <string>

#include "sess/field.hpp"

namespace sess {

/// Thrown by the CLI's file helpers; maps to exit code 1.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Resolves a --prime argument: the named primes m61 (2^61 - 1), p257 and p31,
/// or a decimal literal (validated). Throws std::invalid_argument.
Int resolve_prime_argument(const std::string& arg);

/// Full command dispatch. Exit codes: 0 success, 1 I/O failure,
/// 2 validation/format error, 3 insufficient shares, 4 verification failure.
int run_cli(int argc, const char* const* argv);

}  // namespace sess
