#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace optokerr {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad user input: config keys, parameter ranges, sweep specs, preset ids.
class ConfigError : public Error {
public:
    using Error::Error;
};

enum class NumericalFailure {
    AllCoefficientsZero,
    NoConvergence,
    SingularMatrix,
    NoPhysicalRoot,
    DegenerateDenominator,
    SingularSystem,
    NegativeOccupancy,
    ComplexBranch,
    DomainError,
};

std::string_view to_string(NumericalFailure kind);

class NumericalError : public Error {
public:
    NumericalError(NumericalFailure kind, const std::string& detail)
        : Error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    NumericalFailure kind() const noexcept { return kind_; }

private:
    NumericalFailure kind_;
};

}  // namespace optokerr
