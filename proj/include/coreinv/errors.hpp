#pragma once

#include <stdexcept>
#include <string>

namespace coreinv {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Shape or conformability violation (e.g. matmul with mismatched inner dims).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Construction rejected: non-finite entry, bad dimensions, malformed input.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Matrix not invertible at the given tolerance.
class SingularError : public Error {
public:
    using Error::Error;
};

/// rank(A) != rank(A^2): the group inverse does not exist.
class NotGroupInvertibleError : public Error {
public:
    using Error::Error;
};

/// The core inverse does not exist (equivalent to group invertibility over C^{nxn}).
class NotCoreInvertibleError : public Error {
public:
    using Error::Error;
};

class NotIdempotentError : public Error {
public:
    using Error::Error;
};

class NotProjectionError : public Error {
public:
    using Error::Error;
};

/// A sufficient condition of a constructive formula fails. This is NOT a claim
/// that the requested inverse does not exist; callers must not conclude
/// non-existence from it.
class HypothesisNotMetError : public Error {
public:
    using Error::Error;
};

/// Rejection sampling exceeded its attempt budget.
class GenerationExhaustedError : public Error {
public:
    using Error::Error;
};

/// A near-miss hypothesis cannot be isolated within the requested family.
class NotApplicableError : public Error {
public:
    using Error::Error;
};

}  // namespace coreinv
