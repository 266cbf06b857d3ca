#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lorenz {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (bad parameter, p outside [0,1], N too small).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A tabulated object does not satisfy its structural invariants.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// Density evaluation requested for a copula without a density (M or W).
class SingularCopula : public Error {
public:
    using Error::Error;
};

/// Too many entries of a density grid sit at or below the floor to classify it.
class DegenerateDensity : public Error {
public:
    using Error::Error;
};

/// A normalizing moment is zero, negative or not finite.
class MomentError : public Error {
public:
    using Error::Error;
};

/// More than one interior crossing of the diagonal was found.
class MultipleCrossings : public Error {
public:
    using Error::Error;
};

/// The iteration lost too much of its copula density to the floor.
class NumericalCollapse : public Error {
public:
    NumericalCollapse(std::size_t iteration, const std::string& what)
        : Error("iteration " + std::to_string(iteration) + ": " + what), iteration_(iteration) {}

    [[nodiscard]] std::size_t iteration() const noexcept { return iteration_; }

private:
    std::size_t iteration_;
};

}  // namespace lorenz
