#pragma once

#include <stdexcept>
#include <string>

namespace zfl {

/// Invalid grid/parameter/config input. CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Coefficients fed to an inverse transform are not conjugate-symmetric.
class SymmetryError : public std::runtime_error {
public:
    explicit SymmetryError(const std::string& what) : std::runtime_error(what) {}
};

/// NaN/Inf appeared during time stepping. CLI maps this to exit code 3.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(const std::string& what, double t) : std::runtime_error(what), time(t) {}
    double time;
};

/// Gradient grew past the shock monitor threshold (Burgers runs).
class ShockError : public std::runtime_error {
public:
    ShockError(const std::string& what, double t) : std::runtime_error(what), time(t) {}
    double time;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zfl
