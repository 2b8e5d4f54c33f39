#pragma once

#include <stdexcept>
#include <string>

namespace fieldrec {

// Base of every toolkit error.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad usage, bad configuration, or bad input artifacts. CLI exit code 2.
struct UsageError : Error {
    using Error::Error;
};

// A computation that was set up correctly but failed numerically. CLI exit code 1.
struct NumericalError : Error {
    using Error::Error;
};

struct NonConformingStep : UsageError {
    using UsageError::UsageError;
};

struct OutsideDomain : UsageError {
    using UsageError::UsageError;
};

struct CoincidentPoints : NumericalError {
    using NumericalError::NumericalError;
};

struct SingularSystem : NumericalError {
    using NumericalError::NumericalError;
};

struct ShapeMismatch : UsageError {
    using UsageError::UsageError;
};

struct EmptyBatch : UsageError {
    using UsageError::UsageError;
};

struct TooFewSensors : UsageError {
    using UsageError::UsageError;
};

struct NonFiniteLoss : NumericalError {
    using NumericalError::NumericalError;
};

struct AllRunsFailed : NumericalError {
    using NumericalError::NumericalError;
};

struct SchemaMismatch : UsageError {
    using UsageError::UsageError;
};

struct ChecksumMismatch : UsageError {
    using UsageError::UsageError;
};

struct VersionUnsupported : UsageError {
    using UsageError::UsageError;
};

struct InsufficientData : UsageError {
    using UsageError::UsageError;
};

struct ConfigError : UsageError {
    using UsageError::UsageError;
};

} // namespace fieldrec
