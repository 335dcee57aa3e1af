#pragma once

#include <stdexcept>
#include <string>

namespace wigsmooth {

// Configuration / precondition problems. The CLI maps these to exit code 2.
struct config_error : std::invalid_argument {
    explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical failures detected at run time (norm explosion, NaN, aliasing
// guards). The CLI maps these to exit code 3.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wigsmooth
