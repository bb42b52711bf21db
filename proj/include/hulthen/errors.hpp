#pragma once

#include <stdexcept>
#include <string>

namespace hulthen {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input: parameters, energies, grids or integration settings outside their domain.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A computation was attempted with valid input but failed numerically.
class NumericalError : public Error {
public:
    using Error::Error;
};

class InvalidParameter : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class InvalidEnergy : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class InvalidGrid : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class DomainTooSmall : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class StepTooLarge : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class NonConvergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularMatching : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace hulthen
