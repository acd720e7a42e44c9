#pragma once

#include <stdexcept>
#include <string>

namespace topocode {

// Image/complex dimensions unusable for the requested operation.
struct DimensionError : std::invalid_argument {
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// A value outside its documented domain (negative intensity, coordinate outside [0,1], ...).
struct ValueError : std::invalid_argument {
    explicit ValueError(const std::string& what) : std::invalid_argument(what) {}
};

// A face carries a larger filtration value than one of its cofaces.
struct FiltrationError : std::runtime_error {
    explicit FiltrationError(const std::string& what) : std::runtime_error(what) {}
};

// Code construction could not produce a usable parity-check structure.
struct CodeConstructionError : std::runtime_error {
    explicit CodeConstructionError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid experiment configuration.
struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Dataset / file problems.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace topocode
