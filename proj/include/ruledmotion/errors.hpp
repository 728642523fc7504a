#pragma once

#include <stdexcept>
#include <string>

namespace ruledmotion {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : Error {
    using Error::Error;
};

// Violated operation precondition (zero divisor, wrong mode, ...).
struct PreconditionError : Error {
    using Error::Error;
};

struct DivisionByZeroError : PreconditionError {
    explicit DivisionByZeroError(const std::string& msg = "polynomial division by zero")
        : PreconditionError(msg) {}
};

// Input is not a valid line polynomial.
struct NotVectorialError : Error {
    using Error::Error;
};
struct PluckerViolationError : Error {
    using Error::Error;
};
struct DegenerateLineError : Error {
    using Error::Error;
};

// Norm polynomial of the direction part is not a rational square; no rational
// motion guiding a line along the surface exists.
struct NotKinematicError : Error {
    using Error::Error;
};

// A saturating factor would need algebraic numbers that do not live in the
// rational coefficient field.
struct UnsupportedSplittingError : Error {
    using Error::Error;
};

// Genericity assumption of the closed formulas fails in the current frame;
// the caller retries after a coordinate rotation.
struct GenericityError : Error {
    using Error::Error;
};

// An identity that must hold by construction failed; indicates a bug or an
// invalid input slipped past validation.
struct InternalConsistencyError : Error {
    using Error::Error;
};

struct NonGenericFactorizationError : Error {
    using Error::Error;
};
struct InvalidFactorError : Error {
    using Error::Error;
};

struct FamilyBoundError : Error {
    using Error::Error;
};

struct VerificationFailure : Error {
    using Error::Error;
};

struct InterpolationFailure : Error {
    using Error::Error;
};
struct DegenerateInputError : Error {
    using Error::Error;
};

struct SingularParameterError : Error {
    using Error::Error;
};

}  // namespace ruledmotion
