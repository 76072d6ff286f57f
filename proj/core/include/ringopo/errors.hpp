#pragma once

#include <stdexcept>
#include <string>

namespace ringopo {

// Bad inputs: config values out of range, arguments outside domains,
// malformed files. CLI maps these to exit status 1.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Runtime numerical failures: non-finite intermediates, trace drift,
// unstable drift matrices. CLI maps these to exit status 2.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ringopo
