#pragma once

#include <stdexcept>
#include <string>

namespace chiral {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid user input: bad parameters, malformed configuration, unknown keys.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A computation that could not be completed for otherwise valid input.
class NumericalError : public Error {
public:
    using Error::Error;
};

class SingularGenerator : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class StepTooLarge : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateDenominator : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ZeroEntryField : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateSpectrum : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonMonotoneCurve : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class OutOfRange : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class QuadratureNotConverged : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace chiral
