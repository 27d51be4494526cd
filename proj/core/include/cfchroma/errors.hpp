#pragma once

#include <stdexcept>
#include <string>

namespace cfc {

/// Bad argument or malformed input file. CLI maps this to exit code 2.
struct InputError : std::invalid_argument {
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// An exact search refused to run because its cost cap would be exceeded.
/// The message carries the cost estimate. CLI maps this to exit code 3.
struct CapError : std::runtime_error {
    explicit CapError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cfc
