#pragma once

#include <stdexcept>
#include <string>

namespace blockcomp {

/// Base class for every error raised by the library. The CLI maps these to
/// exit status 2 (bad input) except InvariantFailure, which maps to 1.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ArityMismatch : public Error {
public:
    using Error::Error;
};

class NotSymmetric : public Error {
public:
    using Error::Error;
};

class SizeGuardExceeded : public Error {
public:
    using Error::Error;
};

class EpsilonOutOfRange : public Error {
public:
    using Error::Error;
};

class WitnessNotApplicable : public Error {
public:
    using Error::Error;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

class DomainViolation : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// Raised when an internally computed certificate fails its own exact re-check.
class InvariantFailure : public Error {
public:
    using Error::Error;
};

}  // namespace blockcomp
