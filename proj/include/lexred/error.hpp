#pragma once

#include <stdexcept>
#include <string>

namespace lexred {

// Malformed or inconsistent input data: unreadable images, corrupt stores,
// incompatible artifacts. The CLI maps this to exit code 2.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid command-line usage. The CLI maps this to exit code 1.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lexred
