#ifndef MLALPHA_ERRORS_HPP
#define MLALPHA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mlalpha {

/// Invalid configuration: bad parameter values, malformed config files,
/// mismatched grids. CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A non-finite coefficient was detected during time integration.
/// CLI maps this to exit code 2.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(long step, double time, const std::string& what)
        : std::runtime_error(what), step(step), time(time) {}
    long step;
    double time;
};

/// An internal invariant (Hermitian symmetry, zero mean, divergence-free
/// residual) was violated. CLI maps this to exit code 3.
class InvariantViolation : public std::runtime_error {
public:
    explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mlalpha

#endif
